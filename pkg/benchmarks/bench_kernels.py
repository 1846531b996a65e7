"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py --n 1e5,1e6 --repeat 3

Both backends are fed the same uniforms and their outputs are compared, so
the timings are for identical work.
"""
import argparse
import time

import numpy as np

from superstar import _purepy
from superstar.rng import make_rng

try:
    from superstar import _kernels
except ImportError:  # extension not built
    _kernels = None


def _tree_inputs(n, seed):
    rng = make_rng(seed)
    return rng.random(n), rng.random(n)


def bench_superstar(mod, n, seed):
    u_attach, u_pick = _tree_inputs(n, seed)
    parent = np.empty(n, dtype=np.int64)
    degree = np.empty(n, dtype=np.int64)
    scratch = np.empty(2 * n, dtype=np.int64)
    t0 = time.perf_counter()
    mod.grow_superstar(0.5, u_attach, u_pick, parent, degree, scratch)
    return time.perf_counter() - t0, parent


def bench_preferential(mod, n, seed):
    _, u_pick = _tree_inputs(n, seed)
    parent = np.empty(n, dtype=np.int64)
    degree = np.empty(n, dtype=np.int64)
    scratch = np.empty(2 * n, dtype=np.int64)
    t0 = time.perf_counter()
    mod.grow_preferential(u_pick, parent, degree, scratch)
    return time.perf_counter() - t0, parent


def bench_depth(mod, n, seed):
    _, parent = bench_superstar(_kernels or _purepy, n, seed)
    depth = np.empty(n, dtype=np.int64)
    t0 = time.perf_counter()
    mod.tree_depth(parent, depth)
    return time.perf_counter() - t0, depth


def bench_bp(mod, n, seed):
    u = make_rng(seed).random(3 * (n - 1))
    arrays = [np.empty(n, dtype=np.int64), np.empty(n, dtype=np.uint8), np.empty(n),
              np.empty(n, dtype=np.int64), np.empty(n, dtype=np.int64), np.empty(n, dtype=np.int64),
              np.full(n, np.nan), np.empty(2 * n, dtype=np.int64)]
    t0 = time.perf_counter()
    mod.simulate_bp(0.5, np.inf, -1, u, *arrays)
    return time.perf_counter() - t0, arrays[0]


KERNELS = {
    "grow_superstar": bench_superstar,
    "grow_preferential": bench_preferential,
    "tree_depth": bench_depth,
    "simulate_bp": bench_bp,
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="1e4,1e5,1e6", help="comma-separated sizes")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels is None:
        ap.error("compiled kernels are not built; run pip install -e . first")
    ns = [int(float(x)) for x in args.n.split(",")]

    print(f"{'kernel':<18} {'n':>9} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for name, fn in KERNELS.items():
        for n in ns:
            fast = min(fn(_kernels, n, args.seed)[0] for _ in range(args.repeat))
            slow_t, slow_out = fn(_purepy, n, args.seed)
            fast_out = fn(_kernels, n, args.seed)[1]
            if not np.array_equal(fast_out, slow_out):
                raise SystemExit(f"{name} n={n}: backends disagree")
            print(f"{name:<18} {n:>9} {fast:>10.4f} {slow_t:>10.3f} {slow_t / fast:>8.0f}x")


if __name__ == "__main__":
    main()
