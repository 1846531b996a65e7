"""Growth of the superstar tree and the preferential-attachment baseline.

Vertices are indexed in birth order, so ``parent[i] < i`` for every
non-root vertex and the root (the superstar, or v1 for the baseline) is 0.
"""
from __future__ import annotations

import enum
import io
import json
from dataclasses import dataclass
from typing import IO, Any

import numpy as np

from ._backend import kernels
from .errors import ParameterError, check_probability
from .rng import SEED_MAX, make_rng

ROOT_SENTINEL = -1
TREE_CSV_HEADER = "index,parent,degree"


class ModelTag(str, enum.Enum):
    SUPERSTAR = "superstar"
    PREFERENTIAL = "preferential"


@dataclass(frozen=True)
class GrowthParams:
    p: float
    n: int
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "p", check_probability(self.p))
        if int(self.n) != self.n or self.n < 2:
            raise ParameterError(f"n must be an integer >= 2, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        if not 0 <= int(self.seed) < SEED_MAX:
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True, eq=False)
class RootedTree:
    """Immutable rooted tree in parent-array form."""

    parent: np.ndarray
    degree: np.ndarray
    model_tag: ModelTag
    root: int = 0

    def __post_init__(self):
        for name in ("parent", "degree"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.int64)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "model_tag", ModelTag(self.model_tag))
        if self.parent.shape != self.degree.shape or self.parent.ndim != 1:
            raise ValueError("parent and degree must be 1-d arrays of equal length")

    @property
    def n_vertices(self) -> int:
        return int(self.parent.shape[0])

    def recomputed_degree(self) -> np.ndarray:
        """Degrees rebuilt from the parent array alone."""
        n = self.n_vertices
        links = self.parent[self.parent >= 0]
        deg = np.bincount(links, minlength=n).astype(np.int64)
        deg[self.parent >= 0] += 1
        return deg

    def validate(self) -> None:
        """Raise ``ValueError`` if any structural invariant is broken."""
        n = self.n_vertices
        idx = np.arange(n)
        non_root = idx != self.root
        if self.parent[self.root] != ROOT_SENTINEL:
            raise ValueError("root must carry the sentinel parent")
        if np.any(self.parent[non_root] < 0):
            raise ValueError("every non-root vertex needs a parent")
        if np.any(self.parent[non_root] >= idx[non_root]):
            raise ValueError("parent[i] < i violated")
        if not np.array_equal(self.recomputed_degree(), self.degree):
            raise ValueError("stored degrees disagree with the parent array")
        if int(self.degree.sum()) != 2 * (n - 1):
            raise ValueError("degree sum must be 2(n - 1)")

    def __eq__(self, other):
        if not isinstance(other, RootedTree):
            return NotImplemented
        return (
            self.model_tag == other.model_tag
            and self.root == other.root
            and np.array_equal(self.parent, other.parent)
            and np.array_equal(self.degree, other.degree)
        )

    __hash__ = None


def grow_superstar(params: GrowthParams, rng: np.random.Generator | None = None) -> RootedTree:
    """Grow a superstar tree on ``params.n`` vertices (superstar included).

    Vertex 1 joins the superstar; each later vertex joins the superstar with
    probability ``p`` and otherwise a non-superstar chosen proportionally to
    its degree. Without ``rng`` the stream is ``make_rng(params.seed)``.
    """
    if rng is None:
        rng = make_rng(params.seed)
    n = params.n
    u_attach = rng.random(n)
    u_pick = rng.random(n)
    parent = np.empty(n, dtype=np.int64)
    degree = np.empty(n, dtype=np.int64)
    scratch = np.empty(2 * n, dtype=np.int64)
    kernels.grow_superstar(params.p, u_attach, u_pick, parent, degree, scratch)
    return RootedTree(parent, degree, ModelTag.SUPERSTAR)


def grow_preferential(n: int, rng: np.random.Generator | None = None, *, seed: int = 0) -> RootedTree:
    """Classical preferential-attachment tree grown from a single edge."""
    if int(n) != n or n < 2:
        raise ParameterError(f"n must be an integer >= 2, got {n}")
    n = int(n)
    if rng is None:
        rng = make_rng(seed)
    u_pick = rng.random(n)
    parent = np.empty(n, dtype=np.int64)
    degree = np.empty(n, dtype=np.int64)
    scratch = np.empty(2 * n, dtype=np.int64)
    kernels.grow_preferential(u_pick, parent, degree, scratch)
    return RootedTree(parent, degree, ModelTag.PREFERENTIAL)


def tree_depths(tree: RootedTree) -> tuple[np.ndarray, int]:
    depth = np.empty(tree.n_vertices, dtype=np.int64)
    height = kernels.tree_depth(tree.parent, depth)
    return depth, int(height)


# -- serialization -----------------------------------------------------------

def _comment_lines(text: str) -> list[str]:
    return [line for line in text.splitlines() if line.startswith("#")]


def write_tree_csv(tree: RootedTree, fh: IO[str], config: dict[str, Any] | None = None) -> None:
    """Write ``index,parent,degree`` rows; the root's parent is written as -1.

    ``config`` is embedded as a leading ``# config:`` JSON comment.
    """
    if config is not None:
        fh.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    fh.write(f"# model: {tree.model_tag.value}\n")
    fh.write(TREE_CSV_HEADER + "\n")
    buf = io.StringIO()
    table = np.column_stack([np.arange(tree.n_vertices), tree.parent, tree.degree])
    np.savetxt(buf, table, fmt="%d", delimiter=",")
    fh.write(buf.getvalue())


def read_tree_csv(fh: IO[str]) -> RootedTree:
    text = fh.read()
    tag = ModelTag.SUPERSTAR
    for line in _comment_lines(text):
        if line.startswith("# model:"):
            tag = ModelTag(line.split(":", 1)[1].strip())
    body = [line for line in text.splitlines() if line and not line.startswith("#")]
    if not body or body[0].strip() != TREE_CSV_HEADER:
        raise ValueError(f"expected header {TREE_CSV_HEADER!r}")
    rows = np.loadtxt(io.StringIO("\n".join(body[1:])), delimiter=",", dtype=np.int64, ndmin=2)
    if not np.array_equal(rows[:, 0], np.arange(rows.shape[0])):
        raise ValueError("index column must be 0..n-1 in order")
    tree = RootedTree(rows[:, 1], rows[:, 2], tag)
    tree.validate()
    return tree


def write_edge_list(tree: RootedTree, fh: IO[str]) -> None:
    """Export the tree as whitespace-separated ``child parent`` lines."""
    child = np.flatnonzero(tree.parent >= 0)
    buf = io.StringIO()
    np.savetxt(buf, np.column_stack([child, tree.parent[child]]), fmt="%d", delimiter=" ")
    fh.write(buf.getvalue())
