"""End-to-end acceptance suite: the eleven reproduction criteria.

Each test records one PASS/FAIL line, printed in the pytest terminal summary
(or directly when run as ``python3 tests/test_acceptance.py``). Tolerances,
replication counts and sizes are the stated ones; seeds are fixed per
criterion and never tuned.
"""
import math
import subprocess
import sys
from dataclasses import replace
from pathlib import Path

import pytest

from superstar import experiments, ingest, theory
from superstar.fixtures import EVENT_SHAPES, shaped_edges

pytestmark = pytest.mark.slow

RESULTS: list[str] = []


def record(number, title, checks):
    passed = all(c.passed for c in checks)
    detail = "; ".join(
        f"{c.name}={c.observed:.6g}" + ("" if c.passed else " [miss]") for c in checks
    )
    line = f"{'PASS' if passed else 'FAIL'} criterion {number:2d} {title}: {detail}"
    RESULTS.append(line)
    print(line)
    return passed, "\n".join(c.line() for c in checks)


def simple_check(name, observed, expected, tolerance, passed, detail=""):
    return experiments.Check(name, float(observed), float(expected), float(tolerance), bool(passed), detail)


def test_01_superstar_strong_law():
    checks = []
    for p, seed in ((0.3, 101), (0.5, 102), (0.7, 103)):
        measures = experiments.measure_superstar(p, 10**6, 5, seed)
        c = experiments.check_superstar_law(measures, p, tol=0.01)
        checks.append(replace(c, name=f"superstar_fraction_p{p:g}"))
    ok, msg = record(1, "superstar strong law", checks)
    assert ok, msg


def test_02_degree_law():
    measures = experiments.measure_superstar(0.5, 10**6, 10, 201)
    checks = experiments.check_degree_law(measures, 0.5, kmax=5, rel_tol=0.05)
    worst = max(abs(theory.nu_sm(k, 0.0) - theory.nu_pa(k)) / theory.nu_pa(k) for k in range(1, 101))
    checks.append(simple_check("pa_reduction_max_rel_diff", worst, 0.0, 1e-12, worst <= 1e-12))
    total = math.fsum(theory.nu_sm(k, 0.5) for k in range(1, 10**5 + 1))
    checks.append(simple_check("nu_sm_partial_sum", total, 1.0, 1e-4, abs(total - 1.0) <= 1e-4))
    ok, msg = record(2, "degree law", checks)
    assert ok, msg


def test_03_max_degree_exponent():
    report = experiments.convergence_sweep(0.5, [10**3, 10**4, 10**5, 10**6], 20, 301)
    wanted = ("max_degree_slope", "pa_max_degree_slope")
    checks = [experiments.Check(**c) for c in report["checks"] if c["name"] in wanted]
    assert [c.name for c in checks] == list(wanted)
    pa = checks[1]
    # PA window is the stated [0.45, 0.55]; the helper already uses 0.5 +- 0.05
    assert pa.expected == 0.5 and pa.tolerance == 0.05
    ok, msg = record(3, "max-degree exponent", checks)
    assert ok, msg


# Five replications at n = 1e6 as stated; the smaller n in the trend are cheap
# and get more replications so their ordering is not decided by noise.
HEIGHT_REPS = {10**4: 200, 10**5: 50, 10**6: 5}


def test_04_height_constant():
    checks = []
    for p, seed in ((0.3, 401), (0.5, 402)):
        by_n, offset = {}, 0
        for n, reps in HEIGHT_REPS.items():
            by_n[n] = experiments.measure_superstar(p, n, reps, seed, offset=offset)
            offset += reps
        checks += experiments.check_height(by_n, p, rel_tol=0.15)
    ok, msg = record(4, "height constant", checks)
    assert ok, msg


def test_05_surgery_equivalence():
    check, _, _ = experiments.check_equivalence(0.5, 10**4, 200, 501, tol=0.01)
    ok, msg = record(5, "surgery equivalence", [check])
    assert ok, msg


def test_06_martingale():
    checks = experiments.check_martingale(0.5, [1.0, 2.0, 3.0], 10**4, 601, band=0.03, slack=0.05)
    ok, msg = record(6, "martingale", checks)
    assert ok, msg


def test_07_first_birth_slope():
    check = experiments.check_first_birth(0.5, 12, 50, 701, rel_tol=0.15)
    # the printed target 0.5568 is W(1/e)/(1-p) truncated to four digits
    assert abs(check.expected - 0.5568) / 0.5568 < 1e-3
    ok, msg = record(7, "first-birth slope", [check])
    assert ok, msg


def test_08_yule_oracle():
    check = experiments.check_yule(1.0, 1.0, 10**5, 801, alpha=0.01)
    ok, msg = record(8, "Yule oracle", [check])
    assert ok, msg


def test_09_estimator_pipeline():
    checks = []
    exact = 0
    for shape in EVENT_SHAPES:
        text = "".join(f"{a} {b}\n" for a, b in shaped_edges(shape))
        report = ingest.analyze_component(ingest.giant_component(ingest.parse_edge_list(text)))
        exact += report.p_hat == shape.d_max / shape.n_vertices
    checks.append(simple_check("fixture_p_hat_exact", exact, len(EVENT_SHAPES), 0, exact == len(EVENT_SHAPES),
                               "fixtures with p_hat == d_max/|V|"))
    e6 = next(s for s in EVENT_SHAPES if s.event == 6)
    text = "".join(f"{a} {b}\n" for a, b in shaped_edges(e6))
    s6 = ingest.giant_component(ingest.parse_edge_list(text))
    p6 = ingest.analyze_component(s6).p_hat
    checks.append(simple_check("event6_p_hat", p6, 992 / 1724, 0, p6 == 992 / 1724 and s6.excess_edges == 91,
                               f"excess_edges={s6.excess_edges}"))
    checks += experiments.check_closed_loop(0.5, 10**4, 50, 901, p_tol=0.05, win_rate=0.9)
    ok, msg = record(9, "estimator pipeline", checks)
    assert ok, msg


def test_10_lambert_w():
    w = theory.lambert_w0(math.exp(-1))
    resid = abs(w * math.exp(w) - math.exp(-1))
    checks = [
        simple_check("residual", resid, 0.0, 1e-12, resid <= 1e-12),
        simple_check("w_truncated_4_digits", math.floor(w * 1e4) / 1e4, 0.2784, 0,
                     str(w).startswith("0.2784")),
    ]
    ok, msg = record(10, "Lambert W", checks)
    assert ok, msg


DETERMINISM_RUNS = [
    ["simulate", "--model", "superstar", "--n", "20000", "--p", "0.5", "--seed", "1101", "--reps", "4"],
    ["simulate", "--model", "bp", "--n", "5000", "--p", "0.3", "--seed", "1102", "--reps", "4", "--format", "csv"],
    ["simulate", "--model", "pa", "--n", "20000", "--seed", "1103", "--reps", "4"],
    ["equivalence", "--n", "1000", "--reps", "20", "--seed", "1104", "--tol", "0.5"],
    ["converge", "--p", "0.5", "--n", "1e3,1e4,1e5", "--reps", "4", "--seed", "1105", "--format", "csv"],
]


def _run_cli(argv, out: Path, threads: int):
    is_dir = argv[0] == "simulate"
    target = out if is_dir else out / "report"
    out.mkdir(parents=True)
    subprocess.run([sys.executable, "-m", "superstar", *argv, "--threads", str(threads), "--out", str(target)],
                   check=False, capture_output=True)
    return {p.name: p.read_bytes() for p in sorted(out.iterdir())}


def test_11_determinism(tmp_path):
    checks = []
    for i, argv in enumerate(DETERMINISM_RUNS):
        outputs = [_run_cli(argv, tmp_path / f"cmd{i}_run{j}", threads)
                   for j, threads in enumerate((1, 1, 4))]
        same = bool(outputs[0]) and outputs[0] == outputs[1] == outputs[2]
        checks.append(simple_check(f"{argv[0]}_{argv[2] if argv[0] == 'simulate' else 'report'}",
                                   len(outputs[0]), len(outputs[0]), 0, same,
                                   "files identical across 2 runs at 1 thread and 1 run at 4"))
    ok, msg = record(11, "determinism", checks)
    assert ok, msg


if __name__ == "__main__":
    import tempfile

    failures = 0
    for name, fn in sorted(globals().items()):
        if not name.startswith("test_") or not callable(fn):
            continue
        try:
            if name == "test_11_determinism":
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
        except AssertionError:
            failures += 1
    raise SystemExit(1 if failures else 0)
