"""Measurements on trees and degree distributions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import theory
from .model import ModelTag, RootedTree, tree_depths

NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True)
class Pmf:
    """Sparse degree -> mass map. ``total_count`` is set for empirical pmfs."""

    masses: Mapping[int, float]
    total_count: int | None = None

    def __post_init__(self):
        clean = {int(k): float(v) for k, v in self.masses.items() if v != 0.0}
        if any(k < 1 for k in clean):
            raise ValueError("pmf support must be degrees >= 1")
        if any(v < 0.0 for v in clean.values()):
            raise ValueError("pmf masses must be non-negative")
        object.__setattr__(self, "masses", dict(sorted(clean.items())))

    def __call__(self, k: int) -> float:
        return self.masses.get(int(k), 0.0)

    @property
    def support(self) -> list[int]:
        return list(self.masses)

    def total(self) -> float:
        return math.fsum(self.masses.values())

    def is_normalized(self, tol: float = NORMALIZATION_TOL) -> bool:
        return abs(self.total() - 1.0) <= tol

    @classmethod
    def from_counts(cls, counts: Mapping[int, int] | np.ndarray) -> "Pmf":
        """From a mapping degree -> count, or a bincount-style array."""
        if isinstance(counts, np.ndarray):
            ks = np.flatnonzero(counts)
            counts = dict(zip(ks.tolist(), counts[ks].tolist()))
        total = int(sum(counts.values()))
        if total <= 0:
            raise ValueError("cannot build a pmf from zero observations")
        return cls({k: c / total for k, c in counts.items()}, total_count=total)


@dataclass(frozen=True)
class ScalingFit:
    points: list[tuple[float, float]] = field(default_factory=list)
    slope: float = math.nan
    intercept: float = math.nan


def degree_counts(tree: RootedTree, exclude_root: bool = True) -> np.ndarray:
    deg = tree.degree
    if exclude_root:
        deg = np.delete(deg, tree.root)
    return np.bincount(deg)


def degree_pmf(tree: RootedTree, exclude_root: bool = True) -> Pmf:
    if tree.n_vertices - (1 if exclude_root else 0) < 1:
        raise ValueError("tree has no vertices to count")
    return Pmf.from_counts(degree_counts(tree, exclude_root))


def pooled_degree_pmf(trees: Iterable[RootedTree], exclude_root: bool = True) -> Pmf:
    total = np.zeros(1, dtype=np.int64)
    for tree in trees:
        counts = degree_counts(tree, exclude_root)
        if counts.size > total.size:
            total = np.pad(total, (0, counts.size - total.size))
        total[: counts.size] += counts
    return Pmf.from_counts(total)


def model_pmf_sm(p: float, kmax: int) -> Pmf:
    """Superstar-law pmf truncated at ``kmax`` (not renormalized)."""
    return Pmf({k: theory.nu_sm(k, p) for k in range(1, kmax + 1)})


def model_pmf_pa(kmax: int) -> Pmf:
    return Pmf({k: theory.nu_pa(k) for k in range(1, kmax + 1)})


def _require_superstar(tree: RootedTree) -> None:
    if tree.model_tag is not ModelTag.SUPERSTAR:
        raise ValueError(f"expected a superstar tree, got {tree.model_tag.value}")


def superstar_fraction(tree: RootedTree) -> float:
    """Superstar degree over the number of non-superstar vertices."""
    _require_superstar(tree)
    if tree.n_vertices < 2:
        raise ValueError("tree has no non-superstar vertices")
    return float(tree.degree[tree.root]) / (tree.n_vertices - 1)


def max_nonsuperstar_degree(tree: RootedTree) -> int:
    _require_superstar(tree)
    if tree.n_vertices < 2:
        raise ValueError("tree has only the superstar")
    return int(np.delete(tree.degree, tree.root).max())


def max_degree(tree: RootedTree) -> int:
    return int(tree.degree.max())


def tree_height(tree: RootedTree) -> int:
    """Largest edge distance to the root, in one pass over the birth order."""
    return tree_depths(tree)[1]


def estimate_p(summary) -> float:
    """Plug-in estimate ``d_max / |V|`` from a component summary."""
    if summary.n_vertices < 1 or summary.d_max < 1:
        raise ValueError("component must have at least one vertex and one edge")
    return summary.d_max / summary.n_vertices


def relative_error(k: int, empirical: Pmf, model: Pmf) -> float:
    denom = model(k)
    if denom <= 0.0:
        raise ValueError(f"model mass at k={k} is zero; relative error undefined")
    return abs(denom - empirical(k)) / denom


def tv_distance(a: Pmf, b: Pmf, tol: float = NORMALIZATION_TOL) -> float:
    for name, pmf in (("a", a), ("b", b)):
        if not pmf.is_normalized(tol):
            raise ValueError(f"pmf {name} is not normalized (total {pmf.total()!r})")
    keys = set(a.masses) | set(b.masses)
    return 0.5 * math.fsum(abs(a(k) - b(k)) for k in keys)


def comparable_degrees(model: Pmf, sample_size: int, min_expected: float = 25.0) -> list[int]:
    """Degrees whose expected count under ``model`` is at least ``min_expected``."""
    return [k for k, m in model.masses.items() if m * sample_size >= min_expected]


def loglog_slope(points: Sequence[tuple[float, float]]) -> ScalingFit:
    """Least-squares line through ``(log n, log y)``."""
    pts = [(float(n), float(y)) for n, y in points]
    if len(pts) < 3:
        raise ValueError("need at least 3 points for a scaling fit")
    if any(n <= 0.0 or y <= 0.0 for n, y in pts):
        raise ValueError("scaling fit needs strictly positive n and y")
    x = np.log([n for n, _ in pts])
    y = np.log([v for _, v in pts])
    slope, intercept = np.polyfit(x, y, 1)
    return ScalingFit(pts, float(slope), float(intercept))
