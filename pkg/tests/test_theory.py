import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import lambertw as scipy_lambertw

from superstar import theory
from superstar.errors import ParameterError

# 30-digit value from mpmath.lambertw(1/e)
W_INV_E_REF = 0.278464542761073795109358739023


def nu_sm_direct(k, p):
    """Exact rational evaluation of the product formula (p rational)."""
    p = Fraction(p)
    c = (2 - p) / (1 - p)
    prod = Fraction(1)
    for i in range(1, k + 1):
        prod *= i + c
    return c * math.factorial(k - 1) / prod


class TestDegreeLaws:
    def test_nu_sm_k1_half(self):
        assert theory.nu_sm(1, 0.5) == pytest.approx(0.75, rel=1e-13)

    @pytest.mark.parametrize("k", [1, 2, 3, 7, 20, 60])
    @pytest.mark.parametrize("p", [Fraction(1, 2), Fraction(3, 10), Fraction(9, 10), Fraction(1, 100)])
    def test_nu_sm_matches_exact_product(self, k, p):
        assert theory.nu_sm(k, float(p)) == pytest.approx(float(nu_sm_direct(k, p)), rel=1e-12)

    def test_reduces_to_pa_at_p0(self):
        for k in range(1, 101):
            assert theory.nu_sm(k, 0.0) == pytest.approx(theory.nu_pa(k), rel=1e-12, abs=0)

    def test_nu_pa_values(self):
        assert theory.nu_pa(1) == pytest.approx(2 / 3, rel=1e-15)
        assert theory.nu_pa(2) == pytest.approx(1 / 6, rel=1e-15)

    def test_nu_pa_partial_sum_telescopes(self):
        n = 10**6
        partial = math.fsum(theory.nu_pa(k) for k in range(1, n + 1))
        oracle = 1.0 - 2.0 / ((n + 1) * (n + 2))
        assert partial == pytest.approx(oracle, abs=1e-12)
        assert 1 - 1e-5 <= partial <= 1.0

    def test_nu_sm_normalization(self):
        partial = math.fsum(theory.nu_sm(k, 0.5) for k in range(1, 10**5 + 1))
        assert abs(partial - 1.0) <= 1e-4

    @pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
    def test_strictly_decreasing(self, p):
        vals = [theory.nu_sm(k, p) for k in range(1, 500)]
        assert all(b < a for a, b in zip(vals, vals[1:]))
        tails = [theory.p_geq_k_infty(k, p) for k in range(1, 500)]
        assert all(b < a for a, b in zip(tails, tails[1:]))

    def test_power_law_tail_ratio(self):
        consts = theory.constants(0.5)
        for k in (10**3, 10**4, 10**5, 10**6):
            ratio = theory.nu_sm(k, 0.5) * k**consts.alpha / consts.tail_const
            assert ratio == pytest.approx(1.0, rel=0.01)

    def test_tail_constant_has_no_exponential_factor(self):
        consts = theory.constants(0.5)
        inflated = consts.tail_const * math.exp(2 + consts.alpha)
        k = 10**6
        assert theory.nu_sm(k, 0.5) * k**consts.alpha / inflated < 0.01

    @pytest.mark.parametrize("k", [-1, 0.5])
    def test_rejects_bad_k(self, k):
        with pytest.raises(ParameterError):
            theory.nu_sm(k if k != -1 else 0, 0.5)
        with pytest.raises(ParameterError):
            theory.nu_pa(k if k != -1 else 0)
        with pytest.raises(ParameterError):
            theory.p_geq_k_infty(k, 0.5)

    def test_nu_sm_rejects_p_at_one(self):
        with pytest.raises(ParameterError):
            theory.nu_sm(1, 1.0)


class TestBlueTail:
    def test_zero_is_one(self):
        for p in (0.0, 0.1, 0.5, 0.99):
            assert theory.p_geq_k_infty(0, p) == 1.0

    def test_k1_half(self):
        assert theory.p_geq_k_infty(1, 0.5) == pytest.approx(0.25, rel=1e-13)

    @pytest.mark.parametrize("p", [0.1, 0.5, 0.7])
    def test_differences_give_degree_law(self, p):
        for k in range(1, 51):
            diff = theory.p_geq_k_infty(k - 1, p) - theory.p_geq_k_infty(k, p)
            assert diff == pytest.approx(theory.nu_sm(k, p), abs=1e-12)


class TestLambertW:
    def test_fixed_points(self):
        assert theory.lambert_w0(0.0) == 0.0
        assert theory.lambert_w0(math.e) == pytest.approx(1.0, rel=1e-15)

    def test_inverse_e(self):
        w = theory.lambert_w0(math.exp(-1))
        assert w == pytest.approx(W_INV_E_REF, rel=1e-15)
        assert abs(w * math.exp(w) - math.exp(-1)) <= 1e-12
        assert f"{w:.4f}" == "0.2785"
        assert math.floor(w * 1e4) / 1e4 == 0.2784

    @given(st.floats(0.0, 10.0))
    def test_residual(self, x):
        w = theory.lambert_w0(x)
        assert w >= 0.0
        assert abs(w * math.exp(w) - x) <= 1e-12 * max(1.0, x)

    @given(st.floats(0.0, 1e6))
    def test_matches_scipy(self, x):
        assert theory.lambert_w0(x) == pytest.approx(scipy_lambertw(x).real, rel=1e-13, abs=1e-300)

    @pytest.mark.parametrize("x", [math.inf, math.nan, -0.1])
    def test_rejects(self, x):
        with pytest.raises(ParameterError):
            theory.lambert_w0(x)


class TestConstants:
    def test_half(self):
        c = theory.constants(0.5)
        assert c.gamma == pytest.approx(1 / 3, rel=1e-15)
        assert c.alpha == 4.0
        assert c.c == 3.0
        assert c.tail_const == pytest.approx(18.0, rel=1e-14)
        assert c.beta == pytest.approx(0.556929085522147590, rel=1e-14)
        assert c.height_const == pytest.approx(1.19704049222287404, rel=1e-14)

    def test_p0_limit(self):
        c = theory.constants(0.0)
        assert c.gamma == 0.5
        assert c.alpha == 3.0
        assert c.height_const == pytest.approx(1.795560738334311, rel=1e-14)
        small = theory.constants(1e-9)
        assert small.gamma == pytest.approx(0.5, abs=1e-8)
        assert small.alpha == pytest.approx(3.0, abs=1e-8)

    @given(st.floats(0.0, 0.999))
    def test_self_consistency(self, p):
        c = theory.constants(p)
        assert c.alpha == pytest.approx(1 + c.c, rel=1e-14)
        assert c.gamma * (2 - p) == pytest.approx(1 - p, rel=1e-14)
        assert c.alpha > 2
        assert c.beta * (1 - p) == pytest.approx(c.lambert_w_inv_e, rel=1e-14)
        assert c.height_const * c.lambert_w_inv_e * (2 - p) == pytest.approx(1 - p, rel=1e-14)

    @pytest.mark.parametrize("p", [1.0, -0.5, 2.0])
    def test_rejects_boundary(self, p):
        with pytest.raises(ParameterError):
            theory.constants(p)


def test_martingale_second_moment_limits():
    p = 0.5
    assert theory.martingale_second_moment(0.0, p) == 1.0
    assert theory.martingale_second_moment(50.0, p) == pytest.approx(theory.martingale_second_moment_bound(p))
    ts = np.linspace(0, 10, 50)
    vals = [theory.martingale_second_moment(t, p) for t in ts]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
