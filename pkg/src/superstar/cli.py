"""Command-line front end.

Subcommands: ``simulate``, ``theory``, ``analyze``, ``converge``,
``equivalence``. Every output embeds the run configuration (seed
included, worker count excluded since it never changes results). Exit
status is 2 for usage errors, 1 for failed checks, 0 otherwise.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Sequence

from . import __version__, experiments, ingest, stats, theory
from ._backend import BACKEND
from .branching import bp_sidecar, simulate_bp, surgery, write_bp_csv
from .errors import EdgeListParseError, ParameterError, check_probability
from .model import GrowthParams, grow_preferential, grow_superstar, write_tree_csv
from .rng import SEED_MAX, default_threads, replicate


class UsageError(Exception):
    pass


# -- argument parsing ---------------------------------------------------------

def _count(text: str) -> int:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value != int(value) or value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(value)


def _n_list(text: str) -> list[int]:
    ns = [_count(part) for part in text.split(",") if part.strip()]
    if not ns:
        raise argparse.ArgumentTypeError("empty n list")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise argparse.ArgumentTypeError(f"n list must be strictly increasing, got {text!r}")
    return ns


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _prob(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superstar", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND})")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, *, seed=True, reps=True):
        p.add_argument("--format", choices=("csv", "json"), default="json")
        p.add_argument("--out", "-o", help="output path (directory for simulate); default stdout")
        if seed:
            p.add_argument("--seed", type=_seed, default=0)
        if reps:
            p.add_argument("--reps", type=_count, default=1)
            p.add_argument("--threads", type=_count, default=None,
                           help="worker threads (default: $SUPERSTAR_THREADS or CPU count)")

    sp = sub.add_parser("simulate", help="grow trees or branching processes")
    sp.add_argument("--model", choices=("superstar", "pa", "bp"), default="superstar")
    sp.add_argument("--n", type=_count, required=True)
    sp.add_argument("--p", type=_prob, default=None)
    common(sp)

    tp = sub.add_parser("theory", help="closed-form constants and pmf tables")
    tp.add_argument("--p", type=_prob, required=True)
    tp.add_argument("--kmin", type=_count, default=1)
    tp.add_argument("--kmax", type=_count, default=10)
    common(tp, seed=False, reps=False)

    ap = sub.add_parser("analyze", help="fit the degree laws to an edge-list file")
    ap.add_argument("path", help="edge-list file, or - for stdin")
    ap.add_argument("--kmax", type=_count, default=4)
    common(ap, seed=False, reps=False)

    cp = sub.add_parser("converge", help="limit-law sweeps with pass/fail per tolerance")
    cp.add_argument("--p", type=_prob, required=True)
    cp.add_argument("--n", type=_n_list, default=[1000, 10_000, 100_000, 1_000_000])
    common(cp)
    cp.set_defaults(reps=20)

    ep = sub.add_parser("equivalence", help="surgery-vs-discrete total-variation test")
    ep.add_argument("--p", type=_prob, default=0.5)
    ep.add_argument("--n", type=_count, default=10_000)
    ep.add_argument("--tol", type=float, default=0.01)
    common(ep)
    ep.set_defaults(reps=200)
    return parser


def run_config(args: argparse.Namespace) -> dict[str, Any]:
    config = {k: v for k, v in vars(args).items() if k not in ("out", "threads", "format")}
    config["version"] = __version__
    return config


# -- output -------------------------------------------------------------------

def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render(fmt: str, config: dict, records: list[dict], meta: dict | None = None) -> str:
    """Encode ``records`` (flat dicts with identical keys) as CSV or JSON."""
    meta = meta or {}
    if fmt == "json":
        return json.dumps({"config": config, **meta, "records": records}, indent=2) + "\n"
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    for key, value in meta.items():
        buf.write(f"# {key}: " + json.dumps(value, sort_keys=True) + "\n")
    if records:
        cols = list(records[0])
        buf.write(",".join(cols) + "\n")
        for rec in records:
            buf.write(",".join(_cell(rec[c]) for c in cols) + "\n")
    return buf.getvalue()


@contextmanager
def _sink(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


# -- subcommands --------------------------------------------------------------

def cmd_simulate(args) -> int:
    config = run_config(args)
    if args.model in ("superstar", "bp") and args.p is None:
        raise UsageError(f"--p is required for --model {args.model}")
    if args.model != "bp" and args.n < 2:
        raise UsageError("--n must be >= 2 for tree models")
    if args.model != "pa":
        check_probability(args.p)
    out_dir = Path(args.out) if args.out else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)

    def one(rng, rep):
        if args.model == "bp":
            bp = simulate_bp(args.p, args.n, rng)
            tree = surgery(bp)
        elif args.model == "superstar":
            bp = None
            tree = grow_superstar(GrowthParams(args.p, args.n), rng)
        else:
            bp = None
            tree = grow_preferential(args.n, rng)
        rec = {
            "rep": rep,
            "n_vertices": tree.n_vertices,
            "root_degree": int(tree.degree[0]),
            "max_degree": stats.max_degree(tree),
            "height": stats.tree_height(tree),
        }
        if args.model != "pa":
            rec["superstar_fraction"] = stats.superstar_fraction(tree)
            rec["max_nonsuperstar_degree"] = stats.max_nonsuperstar_degree(tree)
        if bp is not None:
            rec["clock"] = bp.clock
            rec["n_blue"] = bp.n_blue
        if out_dir is not None:
            rep_config = dict(config, rep=rep)
            if bp is not None:
                with open(out_dir / f"bp_rep{rep:04d}.csv", "w", encoding="utf-8") as fh:
                    write_bp_csv(bp, fh, rep_config)
                with open(out_dir / f"bp_rep{rep:04d}.json", "w", encoding="utf-8") as fh:
                    json.dump(bp_sidecar(bp, rep_config), fh)
            else:
                with open(out_dir / f"tree_rep{rep:04d}.csv", "w", encoding="utf-8") as fh:
                    write_tree_csv(tree, fh, rep_config)
        return rec

    records = replicate(one, args.reps, args.seed, args.threads)
    text = render(args.format, config, records)
    if out_dir is not None:
        (out_dir / f"summary.{args.format}").write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_theory(args) -> int:
    if args.kmax < args.kmin:
        raise UsageError("--kmax must be >= --kmin")
    consts = theory.constants(args.p)
    records = [
        {
            "k": k,
            "nu_sm": theory.nu_sm(k, args.p),
            "nu_pa": theory.nu_pa(k),
            "p_geq_k": theory.p_geq_k_infty(k, args.p),
        }
        for k in range(args.kmin, args.kmax + 1)
    ]
    with _sink(args.out) as fh:
        fh.write(render(args.format, run_config(args), records, {"constants": consts.as_dict()}))
    return 0


def cmd_analyze(args) -> int:
    if args.path == "-":
        edges = ingest.parse_edge_list(sys.stdin.buffer)
    else:
        edges = ingest.read_edge_list(args.path)
    report = ingest.analyze_component(ingest.giant_component(edges), kmax=args.kmax)
    records = [r.__dict__.copy() for r in report.rows]
    meta = {
        "p_hat": report.p_hat,
        "component": report.summary.as_dict(),
        "edge_list": {"n_edges": len(edges.edges), "n_raw_lines": edges.n_raw_lines,
                      "n_dropped": edges.n_dropped},
    }
    with _sink(args.out) as fh:
        fh.write(render(args.format, run_config(args), records, meta))
    return 0


def cmd_converge(args) -> int:
    if len(args.n) < 3:
        raise UsageError("converge needs at least 3 values of n for the scaling fits")
    report = experiments.convergence_sweep(args.p, args.n, args.reps, args.seed, args.threads)
    records = [
        {"kind": "measurement", "name": key, "n": row["n"], "observed": value,
         "expected": None, "tolerance": None, "passed": None}
        for row in report["rows"] for key, value in row.items() if key != "n"
    ]
    records += [
        {"kind": "check", "name": c["name"], "n": None, "observed": c["observed"],
         "expected": c["expected"], "tolerance": c["tolerance"], "passed": c["passed"]}
        for c in report["checks"]
    ]
    with _sink(args.out) as fh:
        fh.write(render(args.format, run_config(args), records,
                        {"constants": report["constants"], "passed": report["passed"]}))
    for c in report["checks"]:
        print(experiments.Check(**c).line(), file=sys.stderr)
    return 0 if report["passed"] else 1


def cmd_equivalence(args) -> int:
    check, bp_pmf, direct_pmf = experiments.check_equivalence(
        args.p, args.n, args.reps, args.seed, args.tol, args.threads)
    ks = sorted(set(bp_pmf.masses) | set(direct_pmf.masses))
    records = [{"k": k, "surgery": bp_pmf(k), "discrete": direct_pmf(k)} for k in ks]
    meta = {"tv": check.observed, "tolerance": check.tolerance, "passed": check.passed}
    with _sink(args.out) as fh:
        fh.write(render(args.format, run_config(args), records, meta))
    print(check.line(), file=sys.stderr)
    return 0 if check.passed else 1


COMMANDS = {
    "simulate": cmd_simulate,
    "theory": cmd_theory,
    "analyze": cmd_analyze,
    "converge": cmd_converge,
    "equivalence": cmd_equivalence,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None) is None and hasattr(args, "threads"):
        try:
            args.threads = default_threads()
        except ValueError as exc:
            parser.error(str(exc))
    try:
        return COMMANDS[args.subcommand](args)
    except (UsageError, ParameterError, EdgeListParseError, FileNotFoundError) as exc:
        print(f"superstar {args.subcommand}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
