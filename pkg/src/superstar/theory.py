"""Closed-form limits of the superstar model.

Pure functions over ``math`` only. Products of the form
``prod_{i=1}^k (i + c)`` are evaluated as log-gamma differences so that
``k`` can reach 10^6 without overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError, check_probability

INV_E = math.exp(-1.0)


def _check_k(k, lower: int) -> int:
    if isinstance(k, bool) or int(k) != k:
        raise ParameterError(f"k must be an integer, got {k!r}")
    k = int(k)
    if k < lower:
        raise ParameterError(f"k must be >= {lower}, got {k}")
    return k


def attachment_ratio(p: float) -> float:
    """``(2 - p) / (1 - p)``, the shift appearing in every product formula."""
    return (2.0 - p) / (1.0 - p)


def nu_sm(k: int, p: float) -> float:
    """Limiting fraction of non-superstar vertices with degree ``k``.

    ``p = 0`` is accepted and reproduces :func:`nu_pa`.
    """
    k = _check_k(k, 1)
    p = check_probability(p, allow_zero=True)
    c = attachment_ratio(p)
    return c * math.exp(math.lgamma(k) + math.lgamma(1.0 + c) - math.lgamma(k + 1.0 + c))


def nu_pa(k: int) -> float:
    k = _check_k(k, 1)
    return 4.0 / (k * (k + 1.0) * (k + 2.0))


def p_geq_k_infty(k: int, p: float) -> float:
    """Limiting fraction of branching-process vertices with at least ``k`` blue children."""
    k = _check_k(k, 0)
    p = check_probability(p, allow_zero=True)
    if k == 0:
        return 1.0
    c = attachment_ratio(p)
    return math.exp(math.lgamma(k + 1.0) + math.lgamma(1.0 + c) - math.lgamma(k + 1.0 + c))


def lambert_w0(x: float, *, tol: float = 1e-15, max_iter: int = 100) -> float:
    """Principal branch of the Lambert W function for ``x >= 0``.

    Halley iteration on ``w * exp(w) - x`` started from ``log(1 + x)``.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ParameterError(f"lambert_w0 needs a finite argument, got {x}")
    if x < 0.0:
        raise ParameterError(f"lambert_w0 is only implemented for x >= 0, got {x}")
    w = math.log1p(x)
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - x
        if f == 0.0:
            break
        wp1 = w + 1.0
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= tol * (1.0 + abs(w)):
            break
    return w


W_INV_E = lambert_w0(INV_E)


@dataclass(frozen=True)
class ModelConstants:
    p: float
    c: float
    alpha: float
    gamma: float
    lambert_w_inv_e: float
    height_const: float
    beta: float
    tail_const: float

    def as_dict(self) -> dict[str, float]:
        return dict(self.__dict__)


def constants(p: float) -> ModelConstants:
    """Derived scalars for parameter ``p``.

    ``p = 0`` is accepted as the preferential-attachment limit.
    """
    p = check_probability(p, allow_zero=True)
    c = attachment_ratio(p)
    alpha = (3.0 - 2.0 * p) / (1.0 - p)
    w = W_INV_E
    return ModelConstants(
        p=p,
        c=c,
        alpha=alpha,
        gamma=(1.0 - p) / (2.0 - p),
        lambert_w_inv_e=w,
        height_const=(1.0 - p) / (w * (2.0 - p)),
        beta=w / (1.0 - p),
        tail_const=_tail_const(c, alpha),
    )


def _tail_const(c: float, alpha: float) -> float:
    # Gamma(alpha) overflows a double once alpha > ~171.6 (p within ~0.006 of 1)
    log_value = math.log(c) + math.lgamma(alpha)
    return math.exp(log_value) if log_value < 709.0 else math.inf


def martingale_second_moment(t: float, p: float) -> float:
    """``E[M(t)^2] = 1 + (4 - 3p)(1 - exp(-(2 - p)t)) / (2 - p)``."""
    p = check_probability(p)
    return 1.0 + (4.0 - 3.0 * p) * (1.0 - math.exp(-(2.0 - p) * t)) / (2.0 - p)


def martingale_second_moment_bound(p: float) -> float:
    p = check_probability(p)
    return 1.0 + (4.0 - 3.0 * p) / (2.0 - p)


def stopping_time_centre(n: int, p: float) -> float:
    """Deterministic part ``log(n) / (2 - p)`` of the n-th stopping time."""
    return math.log(n) / (2.0 - p)


def root_offspring_means(t: float, p: float) -> tuple[float, float]:
    """Expected (blue, red) children of a vertex of age ``t``."""
    p = check_probability(p)
    blue = math.expm1((1.0 - p) * t)
    return blue, p / (1.0 - p) * blue
