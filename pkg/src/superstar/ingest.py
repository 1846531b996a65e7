"""Edge-list ingestion, giant-component extraction and superstar-law fit reports.

Graphs are treated as undirected and simple: repeated pairs and self-loops
are dropped (and counted). Labels stay strings; integer ids are internal.
"""
from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from typing import IO, Any, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import stats, theory
from .errors import EdgeListParseError

Source = Union[bytes, str, IO[bytes], IO[str]]

FIT_CSV_HEADER = "k,empirical,model_sm,model_pa,relerr_sm,relerr_pa"


@dataclass(frozen=True)
class EdgeList:
    edges: list[tuple[str, str]]
    n_raw_lines: int = 0
    n_dropped: int = 0
    n_self_loops: int = 0


@dataclass(frozen=True)
class ComponentSummary:
    n_vertices: int
    n_edges: int
    d_max: int
    superstar_label: str
    degree_histogram: dict[int, int]
    superstar_ties: int = 1

    @property
    def excess_edges(self) -> int:
        return self.n_edges - (self.n_vertices - 1)

    def as_dict(self) -> dict[str, Any]:
        return {
            "n_vertices": self.n_vertices,
            "n_edges": self.n_edges,
            "d_max": self.d_max,
            "superstar_label": self.superstar_label,
            "superstar_ties": self.superstar_ties,
            "excess_edges": self.excess_edges,
            "degree_histogram": {str(k): v for k, v in self.degree_histogram.items()},
        }


def _lines(source: Source):
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def parse_edge_list(source: Source) -> EdgeList:
    """Parse ``u v`` lines; blank lines and ``#`` comments are skipped.

    ``source`` is the text itself (``str``/``bytes``) or an open file.
    """
    seen: set[tuple[str, str]] = set()
    edges: list[tuple[str, str]] = []
    raw = dropped = loops = 0
    for lineno, line in enumerate(_lines(source), start=1):
        if isinstance(line, bytes):
            try:
                line = line.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise EdgeListParseError(f"invalid UTF-8: {exc}", lineno) from None
        raw += 1
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        tokens = text.split()
        if len(tokens) != 2:
            raise EdgeListParseError(f"expected 2 tokens, found {len(tokens)}", lineno)
        a, b = tokens
        if a == b:
            loops += 1
            dropped += 1
            continue
        key = (a, b) if a < b else (b, a)
        if key in seen:
            dropped += 1
            continue
        seen.add(key)
        edges.append(key)
    if not edges:
        raise EdgeListParseError("no edges found")
    return EdgeList(edges, n_raw_lines=raw, n_dropped=dropped, n_self_loops=loops)


def read_edge_list(path: str | os.PathLike) -> EdgeList:
    with open(path, "rb") as fh:
        return parse_edge_list(fh)


def giant_component(edges: EdgeList) -> ComponentSummary:
    """Summary of the largest component; ties go to the smallest member label."""
    if not edges.edges:
        raise ValueError("empty edge list")
    labels = sorted({x for e in edges.edges for x in e})
    index = {lab: i for i, lab in enumerate(labels)}
    src = np.fromiter((index[a] for a, _ in edges.edges), dtype=np.int64, count=len(edges.edges))
    dst = np.fromiter((index[b] for _, b in edges.edges), dtype=np.int64, count=len(edges.edges))
    n = len(labels)
    graph = coo_matrix((np.ones(len(src)), (src, dst)), shape=(n, n))
    _, comp = connected_components(graph, directed=False)
    sizes = np.bincount(comp)
    # labels are sorted, so a component's first index is its smallest label
    first_member = np.full(sizes.size, n)
    np.minimum.at(first_member, comp, np.arange(n))
    best = min(range(sizes.size), key=lambda c: (-sizes[c], first_member[c]))

    in_comp = comp == best
    edge_in = in_comp[src]
    degree = np.bincount(src[edge_in], minlength=n) + np.bincount(dst[edge_in], minlength=n)
    comp_deg = degree[in_comp]
    d_max = int(comp_deg.max())
    at_max = np.flatnonzero(in_comp & (degree == d_max))
    ks, counts = np.unique(comp_deg, return_counts=True)
    return ComponentSummary(
        n_vertices=int(in_comp.sum()),
        n_edges=int(edge_in.sum()),
        d_max=d_max,
        superstar_label=labels[int(at_max[0])],
        degree_histogram=dict(zip(ks.tolist(), counts.tolist())),
        superstar_ties=int(at_max.size),
    )


@dataclass(frozen=True)
class DegreeRow:
    k: int
    empirical: float
    model_sm: float
    model_pa: float
    relerr_sm: float
    relerr_pa: float


@dataclass(frozen=True)
class FitReport:
    p_hat: float
    summary: ComponentSummary
    empirical: stats.Pmf
    rows: list[DegreeRow] = field(default_factory=list)

    def superstar_wins(self) -> dict[int, bool]:
        return {r.k: r.relerr_sm < r.relerr_pa for r in self.rows}

    def as_dict(self) -> dict[str, Any]:
        return {
            "p_hat": self.p_hat,
            "component": self.summary.as_dict(),
            "empirical_pmf": {str(k): v for k, v in self.empirical.masses.items()},
            "degrees": [r.__dict__.copy() for r in self.rows],
        }


def analyze_component(summary: ComponentSummary, kmax: int = 4) -> FitReport:
    """Estimate p and compare the empirical degree pmf with both model laws.

    The empirical pmf is over all vertices of the component, superstar included.
    """
    p_hat = stats.estimate_p(summary)
    empirical = stats.Pmf.from_counts(summary.degree_histogram)
    rows = []
    for k in range(1, kmax + 1):
        sm = theory.nu_sm(k, p_hat)  # p_hat <= (|V| - 1)/|V| < 1 always
        pa = theory.nu_pa(k)
        emp = empirical(k)
        rows.append(DegreeRow(k, emp, sm, pa, abs(sm - emp) / sm, abs(pa - emp) / pa))
    return FitReport(p_hat, summary, empirical, rows)


def write_fit_csv(report: FitReport, fh: IO[str]) -> None:
    fh.write(FIT_CSV_HEADER + "\n")
    for r in report.rows:
        fh.write(
            f"{r.k},{r.empirical!r},{r.model_sm!r},{r.model_pa!r},{r.relerr_sm!r},{r.relerr_pa!r}\n"
        )
