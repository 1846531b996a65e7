"""Seeded random streams and ordered replication fan-out."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

import numpy as np

T = TypeVar("T")

SEED_MAX = 2**64
THREADS_ENV = "SUPERSTAR_THREADS"


def make_rng(seed: int, rep: int = 0) -> np.random.Generator:
    """Philox stream keyed by ``seed XOR rep``.

    Philox is counter-based, so each key is an independent stream and a
    replication's draws never depend on how many other replications ran.
    """
    seed = int(seed)
    rep = int(rep)
    if not 0 <= seed < SEED_MAX:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    if rep < 0:
        raise ValueError(f"replication index must be non-negative, got {rep}")
    return np.random.Generator(np.random.Philox(key=seed ^ rep))


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
        if value < 1:
            raise ValueError(f"{THREADS_ENV} must be >= 1, got {value}")
        return value
    return os.cpu_count() or 1


def replicate(
    fn: Callable[[np.random.Generator, int], T],
    reps: int | Sequence[int],
    seed: int,
    threads: int | None = None,
) -> list[T]:
    """Run ``fn(rng, rep)`` for each replication and return results in rep order.

    ``reps`` is a count or an explicit list of replication indices. Output
    does not depend on ``threads``.
    """
    indices = list(range(reps)) if isinstance(reps, int) else [int(r) for r in reps]
    if threads is None:
        threads = default_threads()
    if threads <= 1 or len(indices) <= 1:
        return [fn(make_rng(seed, r), r) for r in indices]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda r: fn(make_rng(seed, r), r), indices))
