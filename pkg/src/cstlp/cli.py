"""Command-line interface.

    cstlp solve problem.mps [--json] [--trace] ...
    cstlp classify problem.mps
    cstlp bench directory/

Exit codes: 0 optimum attained ((F,F), (F,Inf), (Inf,F)); 2 primal
infeasible ((Phi,Inf)); 3 primal unbounded ((Inf,Phi)); 4 both sides
infeasible ((Phi,Phi)); 5 iteration limit or cycle stop; 64 usage errors;
65 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InfeasibleBounds, IterationLimit, MpsError
from .model import canonicalize
from .mps_io import emit_report, iter_mps_files, read_mps, report_dict
from .oracle import MAX_DIMENSION, oracle_solve
from .pivoting import DEFAULT_ORDER, validate_order
from .solver import INFEASIBLE, SolveOptions, SolveReport, solve

USAGE_EXIT = 64
IO_EXIT = 65
LIMIT_EXIT = 5

_CLASS_EXITS = {
    ("F", "F"): 0,
    ("F", "Inf"): 0,
    ("Inf", "F"): 0,
    ("Inf", "Phi"): 3,
    ("Phi", "Inf"): 2,
    ("Phi", "Phi"): 4,
}


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage failures exit with code 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(USAGE_EXIT)


def _exit_code(report: SolveReport) -> int:
    if report.cycle_flag or report.primal_status is None:
        return LIMIT_EXIT
    return _CLASS_EXITS[(report.primal_status, report.dual_status)]


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    p.add_argument("--trace", action="store_true", help="stream per-iteration records to stderr")
    p.add_argument(
        "--trace-tableaus",
        action="store_true",
        help="with --trace, also stream tableau snapshots",
    )
    p.add_argument("--max-iters", type=int, default=None, help="iteration budget (default 50*(m+n))")
    p.add_argument("--tol", type=float, default=None, help="sign/zero tolerance (default 1e-9)")
    p.add_argument(
        "--strategy-order",
        default=None,
        metavar="S1,S2,...",
        help=f"scheme order override, a tier-preserving permutation of {','.join(DEFAULT_ORDER)}",
    )
    p.add_argument(
        "--enumerate-alternatives",
        action="store_true",
        help="walk degenerate pivots at the optimum to list alternative solutions",
    )
    p.add_argument(
        "--oracle-check",
        action="store_true",
        help=f"cross-check against exhaustive enumeration (canonical m+n <= {MAX_DIMENSION})",
    )


def _options(args) -> SolveOptions:
    o = SolveOptions()
    if args.tol is not None:
        o.tol = args.tol
    if args.max_iters is not None:
        o.max_iterations = args.max_iters
    if args.strategy_order is not None:
        o.scheme_order = validate_order(tuple(args.strategy_order.split(",")))
    o.enumerate_alternatives = args.enumerate_alternatives
    if args.trace:
        o.trace = sys.stderr
        o.trace_tableaus = args.trace_tableaus
    return o


def _solve_file(path: str, options: SolveOptions) -> SolveReport:
    lp = read_mps(path)
    problem = canonicalize(lp)
    return solve(problem, options)


def _oracle_note(path: str, report: SolveReport, tol: float) -> str:
    if report.m + report.n > MAX_DIMENSION:
        return "oracle-check: skipped (problem too large)"
    lp = read_mps(path)
    problem = canonicalize(lp)
    verdict = oracle_solve(problem.A, problem.b, problem.c, tol=tol)
    if report.primal_status == INFEASIBLE:
        agree = verdict.status == "infeasible"
    elif report.dual_status == INFEASIBLE:
        agree = verdict.status == "unbounded"
    else:
        agree = (
            verdict.status == "optimal"
            and report.objective_canonical is not None
            and abs(verdict.objective - report.objective_canonical)
            <= 1e-8 * max(1.0, abs(verdict.objective))
        )
    return f"oracle-check: {'agree' if agree else 'DISAGREE'} (oracle status {verdict.status})"


def _cmd_solve(args) -> int:
    options = _options(args)
    try:
        report = _solve_file(args.path, options)
    except IterationLimit as exc:
        sys.stderr.write(f"{exc}\n")
        if exc.report is not None:
            print(emit_report(exc.report, "json" if args.json else "text"), end="")
        return LIMIT_EXIT
    print(emit_report(report, "json" if args.json else "text"), end="")
    if args.json:
        print()
    if args.oracle_check:
        sys.stderr.write(_oracle_note(args.path, report, options.tol) + "\n")
    return _exit_code(report)


def _cmd_classify(args) -> int:
    options = _options(args)
    try:
        report = _solve_file(args.path, options)
    except IterationLimit as exc:
        sys.stderr.write(f"{exc}\n")
        return LIMIT_EXIT
    if args.json:
        d = report_dict(report)
        keep = ("problem", "status_primal", "status_dual", "terminal_class", "cycle", "certificates")
        print(json.dumps({k: d[k] for k in keep}, indent=2))
    else:
        print(str(report.terminal))
        for key, cert in (report.certificates or {}).items():
            print(f"certificate {key}: {cert.get('label', '')}")
    if args.oracle_check:
        sys.stderr.write(_oracle_note(args.path, report, options.tol) + "\n")
    return _exit_code(report)


def _cmd_bench(args) -> int:
    options = _options(args)
    try:
        paths = iter_mps_files(args.directory)
    except OSError as exc:
        sys.stderr.write(f"cannot read directory: {exc}\n")
        return IO_EXIT

    rows = []
    for path in paths:
        name = path.rsplit("/", 1)[-1]
        try:
            lp = read_mps(path)
            problem = canonicalize(lp)
            report = solve(problem, options)
            rows.append(
                {
                    "file": name,
                    "problem": report.name,
                    "orig_rows": len(lp.rows),
                    "orig_cols": len(lp.var_names),
                    "rows": report.m,
                    "cols": report.n,
                    "iterations": report.iterations,
                    "terminal_class": str(report.terminal),
                    "objective": report.objective,
                    "cycle": report.cycle_flag,
                }
            )
        except (MpsError, InfeasibleBounds, IterationLimit, OSError) as exc:
            rows.append({"file": name, "error": str(exc)})

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0

    header = f"{'Problem':<14}{'Rows':>6}{'Cols':>6}{'CST-R':>7}{'CST-C':>7}{'Iters':>7}  {'Class':<12}{'Objective':>22}"
    print(header)
    print("-" * len(header))
    for r in rows:
        if "error" in r:
            print(f"{r['file']:<14}  ERROR: {r['error']}")
            continue
        obj = f"{r['objective']:.10g}" if r["objective"] is not None else "-"
        print(
            f"{r['problem'] or r['file']:<14}{r['orig_rows']:>6}{r['orig_cols']:>6}"
            f"{r['rows']:>7}{r['cols']:>7}{r['iterations']:>7}  {r['terminal_class']:<12}{obj:>22}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cstlp", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an MPS file and report the solution")
    p_solve.add_argument("path", help="MPS file")
    _add_solver_flags(p_solve)
    p_solve.set_defaults(func=_cmd_solve)

    p_classify = sub.add_parser("classify", help="report only the terminal class pair")
    p_classify.add_argument("path", help="MPS file")
    _add_solver_flags(p_classify)
    p_classify.set_defaults(func=_cmd_classify)

    p_bench = sub.add_parser("bench", help="solve every MPS file in a directory, tabulated")
    p_bench.add_argument("directory", help="directory of .mps files")
    _add_solver_flags(p_bench)
    p_bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        sys.stderr.write(f"cannot read input: {exc}\n")
        return IO_EXIT
    except MpsError as exc:
        sys.stderr.write(f"MPS parse error: {exc}\n")
        return IO_EXIT
    except InfeasibleBounds as exc:
        sys.stderr.write(f"infeasible bounds: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
