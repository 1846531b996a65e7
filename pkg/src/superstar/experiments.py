"""Monte Carlo sweeps comparing simulated trees with the closed-form limits.

Each check returns a :class:`Check` carrying the observed value, the target
and the tolerance it was judged against. Replication ``r`` of sweep point
``i`` uses stream ``make_rng(seed, i * reps + r)``, so results do not depend
on the worker count.
"""
from __future__ import annotations

import io
import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np
from scipy import stats as sps

from . import ingest, stats, theory
from .branching import first_birth_times, martingale_trace, simulate_bp, simulate_yule, surgery
from .model import GrowthParams, grow_preferential, grow_superstar, write_edge_list
from .rng import replicate


@dataclass(frozen=True)
class Check:
    name: str
    observed: float
    expected: float
    tolerance: float
    passed: bool
    detail: str = ""

    def as_dict(self):
        return asdict(self)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return (
            f"{flag} {self.name}: observed={self.observed:.6g} expected={self.expected:.6g} "
            f"tol={self.tolerance:.3g}{extra}"
        )


@dataclass(frozen=True)
class TreeMeasure:
    n: int
    superstar_fraction: float
    max_nonsuperstar_degree: int
    height: int
    degree_counts: np.ndarray


def measure_superstar(p: float, n: int, reps: int, seed: int, offset: int = 0,
                      threads: int | None = None) -> list[TreeMeasure]:
    def one(rng, _rep):
        tree = grow_superstar(GrowthParams(p, n), rng)
        return TreeMeasure(
            n=n,
            superstar_fraction=float(tree.degree[0]) / n,
            max_nonsuperstar_degree=stats.max_nonsuperstar_degree(tree),
            height=stats.tree_height(tree),
            degree_counts=stats.degree_counts(tree, exclude_root=True),
        )

    return replicate(one, range(offset, offset + reps), seed, threads)


def measure_pa_max_degree(n: int, reps: int, seed: int, offset: int = 0,
                          threads: int | None = None) -> list[int]:
    return replicate(lambda rng, _r: stats.max_degree(grow_preferential(n, rng)),
                     range(offset, offset + reps), seed, threads)


def mean_pmf(measures: Sequence[TreeMeasure], kmax: int) -> np.ndarray:
    """Per-replication pmf at k = 1..kmax, averaged over replications."""
    rows = []
    for m in measures:
        counts = np.zeros(kmax + 1)
        upto = min(kmax + 1, m.degree_counts.size)
        counts[:upto] = m.degree_counts[:upto]
        rows.append(counts[1:] / (m.n - 1))
    return np.mean(rows, axis=0)


# -- individual checks ------------------------------------------------------

def check_superstar_law(measures: Sequence[TreeMeasure], p: float, tol: float = 0.01) -> Check:
    """Every replication has |deg(v0)/n - p| <= tol."""
    worst = max(abs(m.superstar_fraction - p) for m in measures)
    mean = float(np.mean([m.superstar_fraction for m in measures]))
    return Check("superstar_fraction", mean, p, tol, worst <= tol,
                 f"worst deviation {worst:.4g} over {len(measures)} reps, n={measures[0].n}")


def check_degree_law(measures: Sequence[TreeMeasure], p: float, kmax: int = 5,
                     rel_tol: float = 0.05) -> list[Check]:
    pmf = mean_pmf(measures, kmax)
    out = []
    for k in range(1, kmax + 1):
        model = theory.nu_sm(k, p)
        rel = abs(pmf[k - 1] - model) / model
        out.append(Check(f"degree_pmf_k{k}", float(pmf[k - 1]), model, rel_tol, rel <= rel_tol,
                         f"relative error {rel:.4g}"))
    return out


def check_slope(name: str, ns: Sequence[int], medians: Sequence[float], target: float,
                tol: float) -> Check:
    fit = stats.loglog_slope(list(zip(ns, medians)))
    return Check(name, fit.slope, target, tol, abs(fit.slope - target) <= tol,
                 "medians " + ",".join(f"{m:g}" for m in medians))


def height_ratios(by_n: dict[int, Sequence[TreeMeasure]]) -> dict[int, float]:
    return {n: float(np.mean([m.height for m in ms])) / math.log(n) for n, ms in by_n.items()}


def check_height(by_n: dict[int, Sequence[TreeMeasure]], p: float, rel_tol: float = 0.15) -> list[Check]:
    """Largest-n mean H/log n within ``rel_tol`` and |gap| non-increasing in n."""
    const = theory.constants(p).height_const
    ratios = height_ratios(by_n)
    ns = sorted(ratios)
    last = ratios[ns[-1]]
    rel = abs(last - const) / const
    gaps = [abs(ratios[n] - const) for n in ns]
    monotone = all(b <= a for a, b in zip(gaps, gaps[1:]))
    trend = ", ".join(f"n={n}: {ratios[n]:.4f}" for n in ns)
    return [
        Check(f"height_ratio_p{p:g}", last, const, rel_tol, rel <= rel_tol, f"relative error {rel:.4g}"),
        Check(f"height_trend_p{p:g}", gaps[-1], 0.0, gaps[0], monotone, trend),
    ]


def equivalence_tv(p: float, n: int, reps: int, seed: int, threads: int | None = None):
    """Pooled non-superstar degree pmfs of surgery(BP at n) and the discrete tree on n+1."""
    bp_trees = replicate(lambda rng, _r: surgery(simulate_bp(p, n, rng)), reps, seed, threads)
    direct = replicate(lambda rng, _r: grow_superstar(GrowthParams(p, n + 1), rng),
                       range(reps, 2 * reps), seed, threads)
    a = stats.pooled_degree_pmf(bp_trees)
    b = stats.pooled_degree_pmf(direct)
    return stats.tv_distance(a, b), a, b


def check_equivalence(p: float, n: int, reps: int, seed: int, tol: float = 0.01,
                      threads: int | None = None) -> tuple[Check, stats.Pmf, stats.Pmf]:
    tv, a, b = equivalence_tv(p, n, reps, seed, threads)
    return Check("surgery_equivalence_tv", tv, 0.0, tol, tv < tol, f"n={n}, reps={reps}"), a, b


def martingale_samples(p: float, times: Sequence[float], reps: int, seed: int,
                       threads: int | None = None) -> np.ndarray:
    """``M(t)`` for each replication (rows) at each requested time (columns)."""
    horizon = max(times)
    return np.array(replicate(
        lambda rng, _r: martingale_trace(simulate_bp(p, rng=rng, horizon=horizon), times).values,
        reps, seed, threads,
    ))


def check_martingale(p: float, times: Sequence[float], reps: int, seed: int,
                     band: float = 0.03, slack: float = 0.05,
                     threads: int | None = None) -> list[Check]:
    samples = martingale_samples(p, times, reps, seed, threads)
    bound = theory.martingale_second_moment_bound(p)
    out = []
    for j, t in enumerate(times):
        mean = float(samples[:, j].mean())
        second = float(np.mean(samples[:, j] ** 2))
        out.append(Check(f"martingale_mean_t{t:g}", mean, 1.0, band, abs(mean - 1.0) <= band))
        out.append(Check(f"martingale_second_moment_t{t:g}", second, bound, slack,
                         second <= bound + slack,
                         f"exact E[M^2]={theory.martingale_second_moment(t, p):.4f}"))
    return out


def first_birth_slopes(p: float, k: int, reps: int, seed: int, threads: int | None = None) -> np.ndarray:
    def one(rng, _r):
        bp = simulate_bp(p, rng=rng, until_generation=k)
        return first_birth_times(bp, k)[k] / k

    return np.array(replicate(one, reps, seed, threads))


def check_first_birth(p: float, k: int, reps: int, seed: int, rel_tol: float = 0.15,
                      threads: int | None = None) -> Check:
    beta = theory.constants(p).beta
    mean = float(first_birth_slopes(p, k, reps, seed, threads).mean())
    rel = abs(mean - beta) / beta
    return Check(f"first_birth_slope_k{k}", mean, beta, rel_tol, rel <= rel_tol, f"relative error {rel:.4g}")


def yule_counts(a: float, t: float, reps: int, seed: int, threads: int | None = None) -> np.ndarray:
    return np.array(replicate(lambda rng, _r: simulate_yule(a, rng, horizon=t).count_at(t),
                              reps, seed, threads))


def geometric_chisquare(counts: np.ndarray, success: float, min_expected: float = 5.0):
    """Pearson chi-square of integer counts >= 1 against Geometric(success).

    Bins with expected count below ``min_expected`` are merged into one tail bin.
    Returns ``(statistic, p_value, dof)``.
    """
    counts = np.asarray(counts)
    total = counts.size
    observed = []
    expected = []
    k = 1
    while True:
        tail = total * (1.0 - success) ** (k - 1)
        mass = total * success * (1.0 - success) ** (k - 1)
        if mass < min_expected or tail - mass < min_expected:
            observed.append(int(np.count_nonzero(counts >= k)))
            expected.append(tail)
            break
        observed.append(int(np.count_nonzero(counts == k)))
        expected.append(mass)
        k += 1
    stat, pval = sps.chisquare(observed, expected)
    return float(stat), float(pval), len(observed) - 1


def check_yule(a: float, t: float, reps: int, seed: int, alpha: float = 0.01,
               threads: int | None = None) -> Check:
    counts = yule_counts(a, t, reps, seed, threads)
    stat, pval, dof = geometric_chisquare(counts, math.exp(-a * t))
    return Check("yule_geometric_chisquare", pval, alpha, alpha, pval > alpha,
                 f"chi2={stat:.3f}, dof={dof}")


def closed_loop_fit(p: float, n: int, reps: int, seed: int, kmax: int = 3,
                    threads: int | None = None) -> list[ingest.FitReport]:
    """Export simulated trees as edge lists and push them through ingestion."""
    def one(rng, _r):
        buf = io.StringIO()
        write_edge_list(grow_superstar(GrowthParams(p, n), rng), buf)
        edges = ingest.parse_edge_list(buf.getvalue())
        return ingest.analyze_component(ingest.giant_component(edges), kmax=kmax)

    return replicate(one, reps, seed, threads)


def check_closed_loop(p: float, n: int, reps: int, seed: int, p_tol: float = 0.05,
                      win_rate: float = 0.9, kmax: int = 3,
                      threads: int | None = None) -> list[Check]:
    reports = closed_loop_fit(p, n, reps, seed, kmax, threads)
    worst = max(abs(r.p_hat - p) for r in reports)
    out = [Check("closed_loop_p_hat", float(np.mean([r.p_hat for r in reports])), p, p_tol,
                 worst <= p_tol, f"worst deviation {worst:.4g} over {reps} reps")]
    for k in range(1, kmax + 1):
        rate = float(np.mean([r.superstar_wins()[k] for r in reports]))
        out.append(Check(f"closed_loop_sm_beats_pa_k{k}", rate, win_rate, 0.0, rate >= win_rate,
                         "fraction of reps with relerr_SM < relerr_PA"))
    return out


# -- limit-law sweep ---------------------------------------------------------

def convergence_sweep(p: float, ns: Sequence[int], reps: int, seed: int,
                      threads: int | None = None, kmax: int = 5) -> dict:
    """Measure superstar and PA trees at each n and judge the four limit laws."""
    ns = [int(n) for n in ns]
    by_n: dict[int, list[TreeMeasure]] = {}
    pa_medians = []
    for i, n in enumerate(ns):
        by_n[n] = measure_superstar(p, n, reps, seed, offset=2 * i * reps, threads=threads)
        pa_medians.append(float(np.median(measure_pa_max_degree(n, reps, seed, (2 * i + 1) * reps, threads))))
    consts = theory.constants(p)
    rows = []
    for i, n in enumerate(ns):
        ms = by_n[n]
        pmf = mean_pmf(ms, kmax)
        row = {
            "n": n,
            "superstar_fraction": float(np.mean([m.superstar_fraction for m in ms])),
            "median_max_nonsuperstar_degree": float(np.median([m.max_nonsuperstar_degree for m in ms])),
            "median_max_degree_pa": pa_medians[i],
            "height_over_log_n": float(np.mean([m.height for m in ms])) / math.log(n),
        }
        for k in range(1, kmax + 1):
            row[f"pmf_k{k}"] = float(pmf[k - 1])
        rows.append(row)
    largest = by_n[ns[-1]]
    checks = [check_superstar_law(largest, p)]
    checks += check_degree_law(largest, p, kmax)
    if len(ns) >= 3:
        checks.append(check_slope("max_degree_slope", ns,
                                  [r["median_max_nonsuperstar_degree"] for r in rows], consts.gamma, 0.05))
        checks.append(check_slope("pa_max_degree_slope", ns, pa_medians, 0.5, 0.05))
        checks += check_height({n: by_n[n] for n in ns[-3:]}, p)
    else:
        checks += check_height({ns[-1]: largest}, p)[:1]
    return {"constants": consts.as_dict(), "rows": rows, "checks": [c.as_dict() for c in checks],
            "passed": all(c.passed for c in checks)}
