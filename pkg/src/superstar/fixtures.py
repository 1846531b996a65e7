"""Synthetic edge lists shaped like the thirteen retweet-graph giant components.

Each fixture is connected, has exactly the listed vertex count, edge count and
maximal degree, and a unique maximal-degree vertex carrying the listed name.
The real retweet data is not redistributable; only these shapes are.

Run ``python -m superstar.fixtures OUTDIR`` to write one file per event.
"""
from __future__ import annotations

import sys
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .rng import make_rng


class EventShape(NamedTuple):
    event: int
    n_vertices: int
    n_edges: int
    d_max: int
    superstar: str


EVENT_SHAPES = (
    EventShape(1, 7365, 7620, 512, "warrenellis"),
    EventShape(2, 3995, 4176, 362, "anison"),
    EventShape(3, 2847, 2918, 566, "FIFAWorldCupTM"),
    EventShape(4, 2354, 2414, 657, "taytorswift13"),
    EventShape(5, 1897, 1929, 256, "FIFAcom"),
    EventShape(6, 1724, 1814, 992, "ladygaga"),
    EventShape(7, 1659, 2059, 56, "MMFlint"),
    EventShape(8, 1408, 1459, 269, "FIFAWorldCupTM"),
    EventShape(9, 1025, 1045, 247, "FIFAWorldCupTM"),
    EventShape(10, 1024, 1050, 229, "SkyNewsBreak"),
    EventShape(11, 705, 710, 113, "realmadrid"),
    EventShape(12, 505, 521, 186, "Wimbledon"),
    EventShape(13, 239, 247, 38, "cnnbrk"),
)


def shaped_edges(shape: EventShape, seed: int = 0) -> list[tuple[str, str]]:
    """A connected simple graph matching ``shape`` exactly.

    The hub joins vertices ``1..d_max``; the rest attach uniformly to earlier
    non-hub vertices; surplus edges join random non-hub pairs.
    """
    n, m, d_max = shape.n_vertices, shape.n_edges, shape.d_max
    if not (2 <= d_max <= n - 1 and n - 1 <= m):
        raise ValueError(f"inconsistent shape {shape}")
    rng = make_rng(seed, shape.event)
    degree = np.zeros(n, dtype=np.int64)
    pairs: set[tuple[int, int]] = set()

    def add(a: int, b: int) -> None:
        pairs.add((min(a, b), max(a, b)))
        degree[a] += 1
        degree[b] += 1

    for v in range(1, d_max + 1):
        add(0, v)
    for v in range(d_max + 1, n):
        add(v, int(rng.integers(1, v)))
    while len(pairs) < m:
        a, b = (int(x) for x in rng.integers(1, n, size=2))
        key = (min(a, b), max(a, b))
        if a == b or key in pairs or max(degree[a], degree[b]) + 1 >= d_max:
            continue
        add(a, b)
    if int(np.count_nonzero(degree == d_max)) != 1 or degree.max() != d_max:
        raise RuntimeError(f"fixture for event {shape.event} lost its unique hub")
    names = [shape.superstar] + [f"user{v:05d}" for v in range(1, n)]
    return [(names[a], names[b]) for a, b in sorted(pairs)]


def write_fixture(shape: EventShape, path: str | Path, seed: int = 0) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(
            f"# synthetic event {shape.event}: |V|={shape.n_vertices} |E|={shape.n_edges} "
            f"d_max={shape.d_max} superstar={shape.superstar} seed={seed}\n"
        )
        for a, b in shaped_edges(shape, seed):
            fh.write(f"{a} {b}\n")


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 1:
        print("usage: python -m superstar.fixtures OUTDIR", file=sys.stderr)
        return 2
    out = Path(argv[0])
    out.mkdir(parents=True, exist_ok=True)
    for shape in EVENT_SHAPES:
        write_fixture(shape, out / f"event{shape.event:02d}.edges")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
