"""Two-type continuous-time branching process and its surgery onto a superstar tree.

Every vertex gives birth at rate ``c_blue + 1``; a newborn is red with
probability ``p``. The total rate is ``|BP(t)| + B(t)``, so one exponential
clock plus a degree-proportional parent pick (endpoint-list trick) simulates
the process exactly.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO, Any, NamedTuple, Sequence

import numpy as np

from ._backend import kernels
from .errors import ParameterError, check_probability
from .model import ModelTag, RootedTree
from .rng import make_rng

STOP_REASONS = ("size", "horizon", "generation")
BP_CSV_HEADER = "id,color,birth_time,parent,c_blue,c_red"

_INITIAL_CAPACITY = 4096


class BpVertex(NamedTuple):
    id: int
    color: str
    birth_time: float
    parent: int
    c_blue: int
    c_red: int


@dataclass(frozen=True, eq=False)
class BpState:
    """Completed branching-process run; arrays are read-only.

    Vertex ``i`` is the ``(i+1)``-th born (the root ``v1`` is 0). ``bir[k]`` is
    the first birth time in modified generation ``k`` for every level reached.
    """

    p: float
    parent: np.ndarray
    red: np.ndarray
    birth_time: np.ndarray
    c_blue: np.ndarray
    c_red: np.ndarray
    dgen: np.ndarray
    bir: tuple[float, ...]
    clock: float
    stop_reason: str

    def __post_init__(self):
        for name in ("parent", "red", "birth_time", "c_blue", "c_red", "dgen"):
            getattr(self, name).flags.writeable = False

    @property
    def n_vertices(self) -> int:
        return int(self.parent.shape[0])

    @property
    def n_red(self) -> int:
        return int(np.count_nonzero(self.red))

    @property
    def n_blue(self) -> int:
        return self.n_vertices - self.n_red

    @property
    def tau(self) -> np.ndarray:
        """``tau[n-1]`` is the first time the population reaches ``n``."""
        return self.birth_time

    @property
    def total_rate(self) -> int:
        return self.n_vertices + self.n_blue

    def vertex(self, i: int) -> BpVertex:
        return BpVertex(
            id=int(i),
            color="red" if self.red[i] else "blue",
            birth_time=float(self.birth_time[i]),
            parent=int(self.parent[i]),
            c_blue=int(self.c_blue[i]),
            c_red=int(self.c_red[i]),
        )


def simulate_bp(
    p: float,
    n_target: int | None = None,
    rng: np.random.Generator | None = None,
    *,
    horizon: float | None = None,
    until_generation: int | None = None,
    seed: int = 0,
    max_vertices: int = 50_000_000,
) -> BpState:
    """Run the branching process from a single red root.

    Stops at the first of: ``n_target`` vertices, clock reaching ``horizon``
    (the state is then observed at exactly ``horizon``), or the birth of the
    first vertex with modified generation ``until_generation``.

    Event ``i`` uses uniforms ``3i..3i+2`` of the stream, so a shorter run is
    always a prefix of a longer run with the same stream.
    """
    p = check_probability(p)
    if n_target is None and horizon is None and until_generation is None:
        raise ParameterError("need at least one of n_target, horizon, until_generation")
    if n_target is not None:
        if int(n_target) != n_target or n_target < 1:
            raise ParameterError(f"n_target must be an integer >= 1, got {n_target}")
        n_target = int(n_target)
    if horizon is not None:
        horizon = float(horizon)
        if not horizon >= 0.0:
            raise ParameterError(f"horizon must be >= 0, got {horizon}")
    if until_generation is not None:
        if int(until_generation) != until_generation or until_generation < 0:
            raise ParameterError(f"until_generation must be an integer >= 0, got {until_generation}")
        until_generation = int(until_generation)
    if rng is None:
        rng = make_rng(seed)

    capacity = n_target if n_target is not None else min(_INITIAL_CAPACITY, max_vertices)
    uniforms = rng.random(3 * (capacity - 1))
    while True:
        out = _run_kernel(p, capacity, uniforms, horizon, until_generation)
        if out[-1] != "size" or capacity == n_target:
            break
        if capacity >= max_vertices:
            raise RuntimeError(f"branching process exceeded max_vertices={max_vertices}")
        grown = min(2 * capacity, max_vertices)
        if n_target is not None:
            grown = min(grown, n_target)
        uniforms = np.concatenate([uniforms, rng.random(3 * (grown - capacity))])
        capacity = grown
    return BpState(p, *out)


def _run_kernel(p, capacity, uniforms, horizon, until_generation):
    parent = np.empty(capacity, dtype=np.int64)
    red = np.empty(capacity, dtype=np.uint8)
    birth_time = np.empty(capacity, dtype=np.float64)
    c_blue = np.empty(capacity, dtype=np.int64)
    c_red = np.empty(capacity, dtype=np.int64)
    dgen = np.empty(capacity, dtype=np.int64)
    bir = np.full(capacity, np.nan)
    scratch = np.empty(2 * capacity, dtype=np.int64)
    n, _, clock, reason = kernels.simulate_bp(
        p,
        math.inf if horizon is None else horizon,
        -1 if until_generation is None else until_generation,
        uniforms,
        parent, red, birth_time, c_blue, c_red, dgen, bir, scratch,
    )
    reached = int(np.count_nonzero(~np.isnan(bir[:n])))
    return (
        parent[:n].copy(),
        red[:n].astype(bool),
        birth_time[:n].copy(),
        c_blue[:n].copy(),
        c_red[:n].copy(),
        dgen[:n].copy(),
        tuple(float(x) for x in bir[:reached]),
        float(clock),
        STOP_REASONS[reason],
    )


def surgery(bp: BpState) -> RootedTree:
    """Rewire every red vertex to a new superstar ``v0`` and drop the colours.

    BP vertex ``i`` becomes tree vertex ``i + 1``; blue vertices keep their
    parent, so each non-superstar ends with degree ``c_blue + 1``.
    """
    n = bp.n_vertices
    if n < 1:
        raise ValueError("branching state has no vertices")
    parent = np.empty(n + 1, dtype=np.int64)
    parent[0] = -1
    parent[1:] = np.where(bp.red, 0, bp.parent + 1)
    degree = np.empty(n + 1, dtype=np.int64)
    degree[0] = bp.n_red
    degree[1:] = bp.c_blue + 1
    return RootedTree(parent, degree, ModelTag.SUPERSTAR)


@dataclass(frozen=True)
class MartingaleTrace:
    """``values[i] = exp(-(2 - p) times[i]) * (|BP| + B)`` at ``times[i]``."""

    times: np.ndarray
    values: np.ndarray

    def __iter__(self):
        return iter(zip(self.times.tolist(), self.values.tolist()))

    def __len__(self):
        return int(self.times.shape[0])


def martingale_trace(bp: BpState, times: Sequence[float] | np.ndarray | None = None) -> MartingaleTrace:
    """Evaluate ``M(t)`` from the event history; defaults to every birth time."""
    t = bp.birth_time if times is None else np.asarray(times, dtype=np.float64).ravel()
    if t.size and (t.min() < 0.0 or t.max() > bp.clock):
        raise ValueError(f"sample times must lie in [0, {bp.clock}]")
    alive = np.searchsorted(bp.birth_time, t, side="right")
    blue_so_far = np.concatenate([[0], np.cumsum(~bp.red)])
    weight = alive + blue_so_far[alive]
    values = np.exp(-(2.0 - bp.p) * t) * weight
    return MartingaleTrace(t.copy(), values)


def modified_generation(bp: BpState) -> np.ndarray:
    """Edges from each vertex up to its nearest red ancestor (0 for red vertices)."""
    return bp.dgen.copy()


def first_birth_times(bp: BpState, k_max: int) -> list[float | None]:
    """``Bir(0..k_max)``; levels the run never reached are ``None``."""
    if int(k_max) != k_max or k_max < 0:
        raise ParameterError(f"k_max must be an integer >= 0, got {k_max}")
    return [bp.bir[k] if k < len(bp.bir) else None for k in range(int(k_max) + 1)]


# -- Yule process ------------------------------------------------------------

@dataclass(frozen=True)
class YuleTrajectory:
    """Jump times (starting at 0) and population sizes just after each jump."""

    rate: float
    times: np.ndarray
    counts: np.ndarray
    horizon: float | None

    def count_at(self, t: float) -> int:
        if self.horizon is not None and t > self.horizon:
            raise ValueError(f"t={t} beyond simulated horizon {self.horizon}")
        return int(self.counts[np.searchsorted(self.times, t, side="right") - 1])


def simulate_yule(
    a: float,
    rng: np.random.Generator,
    *,
    horizon: float | None = None,
    target: int | None = None,
    chunk: int = 256,
) -> YuleTrajectory:
    """Pure-birth process from one individual, per-capita rate ``a``.

    Waiting time at population ``k`` is exponential with rate ``a k``; draws
    are made in chunks and cut at the stopping condition.
    """
    a = float(a)
    if not a > 0.0 or not math.isfinite(a):
        raise ParameterError(f"Yule rate must be positive and finite, got {a}")
    if horizon is None and target is None:
        raise ParameterError("need a horizon or a target count")
    if target is not None and (int(target) != target or target < 1):
        raise ParameterError(f"target must be an integer >= 1, got {target}")
    times = [np.zeros(1)]
    t = 0.0
    k = 1
    while True:
        if target is not None and k >= target:
            break
        pops = np.arange(k, k + chunk, dtype=np.float64)
        jumps = t + np.cumsum(rng.standard_exponential(chunk) / (a * pops))
        stop = len(jumps)
        if horizon is not None:
            stop = int(np.searchsorted(jumps, horizon, side="right"))
        if target is not None:
            stop = min(stop, target - k)
        times.append(jumps[:stop])
        k += stop
        if stop < len(jumps):
            break
        t = float(jumps[-1])
    jump_times = np.concatenate(times)
    return YuleTrajectory(a, jump_times, np.arange(1, len(jump_times) + 1), horizon)


# -- dumps -------------------------------------------------------------------

def write_bp_csv(bp: BpState, fh: IO[str], config: dict[str, Any] | None = None) -> None:
    if config is not None:
        fh.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    fh.write(BP_CSV_HEADER + "\n")
    colors = np.where(bp.red, "red", "blue")
    for i in range(bp.n_vertices):
        fh.write(
            f"{i},{colors[i]},{float(bp.birth_time[i])!r},{int(bp.parent[i])},"
            f"{int(bp.c_blue[i])},{int(bp.c_red[i])}\n"
        )


def bp_sidecar(bp: BpState, config: dict[str, Any] | None = None) -> dict[str, Any]:
    return {
        "config": config,
        "p": bp.p,
        "n_vertices": bp.n_vertices,
        "n_blue": bp.n_blue,
        "n_red": bp.n_red,
        "clock": bp.clock,
        "stop_reason": bp.stop_reason,
        "tau": bp.tau.tolist(),
        "bir": list(bp.bir),
    }


def read_bp_csv(fh: IO[str], p: float) -> BpState:
    """Rebuild a state from a run dump (modified generations recomputed)."""
    rows = [line for line in fh.read().splitlines() if line and not line.startswith("#")]
    if not rows or rows[0].strip() != BP_CSV_HEADER:
        raise ValueError(f"expected header {BP_CSV_HEADER!r}")
    fields = [r.split(",") for r in rows[1:]]
    red = np.array([f[1] == "red" for f in fields])
    parent = np.array([int(f[3]) for f in fields], dtype=np.int64)
    birth = np.array([float(f[2]) for f in fields])
    dgen = np.zeros(len(fields), dtype=np.int64)
    for i in range(1, len(fields)):
        dgen[i] = 0 if red[i] else dgen[parent[i]] + 1
    bir = []
    for i, d in enumerate(dgen.tolist()):
        if d == len(bir):
            bir.append(float(birth[i]))
    return BpState(
        p=check_probability(p),
        parent=parent,
        red=red,
        birth_time=birth,
        c_blue=np.array([int(f[4]) for f in fields], dtype=np.int64),
        c_red=np.array([int(f[5]) for f in fields], dtype=np.int64),
        dgen=dgen,
        bir=tuple(bir),
        clock=float(birth[-1]),
        stop_reason="size",
    )
