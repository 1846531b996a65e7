"""Compiled and pure-Python kernels must agree bit for bit."""
import math

import numpy as np
import pytest

from superstar import _purepy
from superstar.rng import make_rng


def _superstar(kern, n, p, seed):
    rng = make_rng(seed)
    ua, up = rng.random(n), rng.random(n)
    parent = np.empty(n, np.int64)
    degree = np.empty(n, np.int64)
    kern.grow_superstar(p, ua, up, parent, degree, np.empty(2 * n, np.int64))
    return parent, degree


def _pa(kern, n, seed):
    up = make_rng(seed).random(n)
    parent = np.empty(n, np.int64)
    degree = np.empty(n, np.int64)
    kern.grow_preferential(up, parent, degree, np.empty(2 * n, np.int64))
    return parent, degree


def _bp(kern, p, n_max, seed, horizon=math.inf, gen=-1):
    u = make_rng(seed).random(3 * (n_max - 1))
    arrays = [
        np.empty(n_max, np.int64),
        np.empty(n_max, np.uint8),
        np.empty(n_max, np.float64),
        np.empty(n_max, np.int64),
        np.empty(n_max, np.int64),
        np.empty(n_max, np.int64),
        np.full(n_max, np.nan),
        np.empty(2 * n_max, np.int64),
    ]
    out = kern.simulate_bp(p, horizon, gen, u, *arrays)
    n = out[0]
    return out, [a[:n] for a in arrays[:6]] + [arrays[6][:n]]


@pytest.mark.parametrize("n,p,seed", [(2, 0.5, 0), (3, 0.1, 1), (50, 0.5, 2), (20_000, 0.3, 3), (20_000, 0.9, 4)])
def test_superstar_kernels_agree(compiled, n, p, seed):
    a = _superstar(compiled, n, p, seed)
    b = _superstar(_purepy, n, p, seed)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


@pytest.mark.parametrize("n,seed", [(2, 0), (3, 1), (20_000, 5)])
def test_pa_kernels_agree(compiled, n, seed):
    a = _pa(compiled, n, seed)
    b = _pa(_purepy, n, seed)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_depth_kernels_agree(compiled):
    parent, _ = _superstar(compiled, 10_000, 0.4, 9)
    d1, d2 = np.empty_like(parent), np.empty_like(parent)
    assert compiled.tree_depth(parent, d1) == _purepy.tree_depth(parent, d2)
    assert np.array_equal(d1, d2)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(p=0.5, n_max=1, seed=0),
        dict(p=0.5, n_max=5000, seed=1),
        dict(p=0.2, n_max=5000, seed=2, horizon=2.5),
        dict(p=0.5, n_max=200_000, seed=3, gen=6),
        dict(p=0.5, n_max=100, seed=4, gen=0),
    ],
)
def test_bp_kernels_agree(compiled, kwargs):
    o1, a1 = _bp(compiled, **kwargs)
    o2, a2 = _bp(_purepy, **kwargs)
    assert o1 == o2
    for x, y in zip(a1, a2):
        assert np.array_equal(x, y, equal_nan=True)


def test_largest_uniform_picks_last_endpoint(backend):
    u = np.nextafter(1.0, 0.0)
    n = 4
    ua = np.zeros(n)
    up = np.full(n, u)
    parent = np.empty(n, np.int64)
    degree = np.empty(n, np.int64)
    backend.grow_superstar(0.0, ua, up, parent, degree, np.empty(2 * n, np.int64))
    assert parent.tolist() == [-1, 0, 1, 2]


def test_bp_rate_bookkeeping(backend):
    (n, n_blue, clock, reason), arrays = _bp(backend, 0.4, 3000, 11)
    _, red, _, c_blue, _, _, _ = arrays
    assert reason == 0 and n == 3000
    assert n_blue == int(np.count_nonzero(red == 0))
    # total rate = sum over vertices of (c_blue + 1) = |BP| + B
    assert int((c_blue + 1).sum()) == n + n_blue
