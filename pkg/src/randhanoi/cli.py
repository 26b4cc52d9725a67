"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 problem too large, 4 solver failure, 5 unknown sequence.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import formulas, oeis, resistors, solver
from .core import build_graph, write_edge_list
from .errors import InsufficientTrials, SolveFailure, TooLarge, UnknownSequence
from .simulate import SimConfig, estimate_cv, simulate_steps, SimStats, write_steps
from .variants import VARIANTS, PuzzleVariant
from .verify import run_verification

EXIT_FAIL, EXIT_USAGE, EXIT_TOO_LARGE, EXIT_SOLVE, EXIT_UNKNOWN_SEQ = 1, 2, 3, 4, 5


def fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_json(x):
    if isinstance(x, Fraction):
        return {"num": str(x.numerator), "den": str(x.denominator)}
    if isinstance(x, int) and not isinstance(x, bool):
        return {"num": str(x), "den": "1"}
    if isinstance(x, dict):
        return {k: to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json(v) for v in x]
    return x


def fmt_plain(x) -> str:
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if isinstance(x, float):
        return repr(x)
    if x is None:
        return "n/a"
    return str(x)


def render_record(record: dict, fmt: str) -> str:
    """One flat record as ``key: value`` lines, a CSV row pair or JSON."""
    if fmt == "json":
        return json.dumps(to_json(record), separators=(",", ":")) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(record.keys())
        w.writerow(fmt_plain(v) for v in record.values())
        return buf.getvalue()
    width = max(len(k) for k in record)
    return "".join(f"{k.ljust(width)}  {fmt_plain(v)}\n" for k, v in record.items())


def render_value(value, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(to_json(value), separators=(",", ":")) + "\n"
    return fmt_plain(value) + "\n"


def render_grid(grid: dict[str, list], ns: list[int], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(
            {k: {str(n): to_json(v) for n, v in zip(ns, vals)} for k, vals in grid.items()},
            separators=(",", ":"),
        ) + "\n"
    rows = [["variant"] + [f"n={n}" for n in ns]]
    rows += [[k] + [fmt_plain(v) for v in vals] for k, vals in grid.items()]
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in rows)


# -- argument types ------------------------------------------------------------


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def seed_int(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def variant_arg(text: str) -> PuzzleVariant:
    try:
        return PuzzleVariant.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# -- subcommands ---------------------------------------------------------------


def cmd_formula(args, out) -> int:
    if args.all:
        ns = list(range(1, args.n_max + 1))
        grid = {str(v): [formulas.expected_moves(n, v) for n in ns] for v in VARIANTS}
        out.write(render_grid(grid, ns, args.format))
        return 0
    if args.variant is None or args.n is None:
        raise argparse.ArgumentTypeError("formula needs --variant and --n, or --all")
    out.write(render_value(formulas.expected_moves(args.n, args.variant), args.format))
    return 0


def _mode(args) -> solver.NumericMode:
    if args.mode == "exact":
        return solver.EXACT
    return solver.Float64(tolerance=args.tolerance, method=args.method, max_sweeps=args.max_sweeps)


def cmd_exact(args, out) -> int:
    mode = _mode(args)
    if args.pq:
        out.write(render_record(solver.pq_values(args.n, mode).as_dict(), args.format))
        return 0
    if args.variant is None:
        raise argparse.ArgumentTypeError("exact needs --variant or --pq")
    out.write(render_value(solver.solve_variant(args.n, args.variant, mode), args.format))
    return 0


def cmd_simulate(args, out) -> int:
    cfg = SimConfig(args.n, args.variant, args.trials, args.seed, args.max_steps, args.workers)
    steps, censored = simulate_steps(cfg, checked=args.checked)
    stats = SimStats.from_steps(steps, int(censored.sum()))
    if args.dump:
        with open(args.dump, "w") as fh:
            write_steps(steps, fh)
    exact = formulas.expected_moves(args.n, args.variant)
    record = {
        "n": args.n,
        "variant": str(args.variant),
        "trials": stats.trials,
        "seed": args.seed,
        "mean": stats.mean,
        "variance": stats.variance,
        "stddev": stats.stddev,
        "cv": stats.cv,
        "ci95_halfwidth": stats.ci95_halfwidth,
        "min": stats.min,
        "max": stats.max,
        "censored": stats.censored,
        "exact": exact,
        "exact_float": float(exact),
        "z_score": stats.z_score(exact),
    }
    if args.cv:
        est = estimate_cv(cfg, args.resamples)
        record["cv_ci95_low"] = est.ci[0] if est.applicable else None
        record["cv_ci95_high"] = est.ci[1] if est.applicable else None
    out.write(render_record(record, args.format))
    return 0


def cmd_resist(args, out) -> int:
    n = args.n
    record = {
        "n": n,
        "R": resistors.reduce_gasket(n).R,
        "corner_resistance": resistors.corner_resistance(n),
        "edges": formulas.edge_count(n),
        "commute_time": resistors.commute_time(n),
        "one_way": resistors.one_way_time(n),
    }
    out.write(render_record(record, args.format))
    return 0


def cmd_verify(args, out) -> int:
    report = run_verification(args.n_max, args.trials, args.seed, args.fixture_dir)
    out.write(report.render())
    return 0 if report.ok else EXIT_FAIL


def cmd_oeis(args, out) -> int:
    terms = oeis.generate_sequence(args.id, args.count)
    out.write(" ".join(str(t) for t in terms) + "\n")
    report = oeis.verify_against_fixture(args.id, args.fixture_dir)
    out.write("\n".join(report.lines()) + "\n")
    ok = report.ok
    if args.remote:
        remote = oeis.verify_remote(args.id, args.base_url, args.timeout, args.fixture_dir)
        out.write("\n".join(remote.lines()) + "\n")
        ok = ok and remote.ok
    return 0 if ok else EXIT_FAIL


def cmd_graph(args, out) -> int:
    g = build_graph(args.n)
    if args.output:
        with open(args.output, "w") as fh:
            write_edge_list(g, fh)
    else:
        write_edge_list(g, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="randhanoi",
        description="Expected numbers of random moves for Tower of Hanoi variants.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    variants = ", ".join(v.flag for v in VARIANTS)

    def add_format(sp):
        sp.add_argument("--format", choices=("table", "json", "csv"), default="table")

    f = sub.add_parser("formula", help="closed-form expectations")
    f.add_argument("--variant", type=variant_arg, help=variants)
    f.add_argument("--n", type=positive_int)
    f.add_argument("--all", action="store_true", help="grid of all variants")
    f.add_argument("--n-max", type=positive_int, default=6)
    add_format(f)
    f.set_defaults(func=cmd_formula)

    e = sub.add_parser("exact", help="solve the Markov chain on the state graph")
    e.add_argument("--variant", type=variant_arg, help=variants)
    e.add_argument("--n", type=positive_int, required=True)
    e.add_argument("--pq", action="store_true", help="final-peg probabilities instead")
    e.add_argument("--mode", choices=("exact", "float"), default="exact")
    e.add_argument("--method", choices=("direct", "gauss-seidel"), default="direct")
    e.add_argument("--tolerance", type=float, default=solver.Float64.tolerance)
    e.add_argument("--max-sweeps", type=positive_int, default=solver.Float64.max_sweeps,
                   help="iteration cap for gauss-seidel")
    add_format(e)
    e.set_defaults(func=cmd_exact)

    s = sub.add_parser("simulate", help="Monte Carlo estimate")
    s.add_argument("--n", type=positive_int, required=True)
    s.add_argument("--variant", type=variant_arg, required=True, help=variants)
    s.add_argument("--trials", type=positive_int, default=10_000)
    s.add_argument("--seed", type=seed_int, default=0)
    s.add_argument("--max-steps", type=positive_int, default=10**9)
    s.add_argument("--workers", type=positive_int, default=1)
    s.add_argument("--dump", metavar="PATH", help="write per-trial step counts")
    s.add_argument("--checked", action="store_true", help="validate every move")
    s.add_argument("--cv", action="store_true", help="bootstrap interval for the CV")
    s.add_argument("--resamples", type=positive_int, default=1000)
    add_format(s)
    s.set_defaults(func=cmd_simulate)

    r = sub.add_parser("resist", help="resistor-network quantities")
    r.add_argument("--n", type=positive_int, required=True)
    add_format(r)
    r.set_defaults(func=cmd_resist)

    v = sub.add_parser("verify", help="run every cross-check")
    v.add_argument("--n-max", type=positive_int, default=5)
    v.add_argument("--trials", type=positive_int, default=20_000)
    v.add_argument("--seed", type=seed_int, default=2024)
    v.add_argument("--fixture-dir", help="directory of replacement fixture files")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oeis", help="generate a sequence and compare with fixtures")
    o.add_argument("id")
    o.add_argument("--count", type=positive_int, default=10)
    o.add_argument("--remote", action="store_true", help="also fetch the OEIS b-file")
    o.add_argument("--base-url", help=f"OEIS base URL (default ${oeis.BASE_URL_ENV} or oeis.org)")
    o.add_argument("--timeout", type=float, default=oeis.DEFAULT_TIMEOUT)
    o.add_argument("--fixture-dir")
    o.set_defaults(func=cmd_oeis)

    g = sub.add_parser("graph", help="export the state graph as an edge list")
    g.add_argument("--n", type=positive_int, required=True)
    g.add_argument("--output", metavar="PATH")
    g.set_defaults(func=cmd_graph)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except SolveFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVE
    except UnknownSequence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN_SEQ
    except (argparse.ArgumentTypeError, InsufficientTrials, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
