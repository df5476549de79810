"""Command-line front end: ``kaucher solve | check | verify``.

Exit codes: 0 converged / criterion met, 1 usage or input error, 2 numeric
non-convergence (or criterion not met, or a failed verification).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import (
    BoundUnavailableError, KaucherError, ProblemSyntaxError, ShapeError,
    SingularMatrixError, SplittingError, StartFailureError, ZeroInProjectionError,
)
from .immersion import is_absolutely_regular
from .linalg import IntervalVector, mid_matrix, residual
from .newton import NewtonOptions, newton_solve
from .problems import Problem, parse_problem, parse_vector
from .reallinalg import PIVOT_TOL
from .splitting import (
    DEFAULT_MAX_ITER, DEFAULT_TOL, SolveReport, Status, arm_convergence_criterion,
    arm_iterate, arm_split_markov, arm_split_simple, trn_convergence_criterion,
    trn_iterate, trn_split,
)

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2
METHODS = ("armsplit", "armsplit-simple", "trnsplit", "newton")
CRITERIA = ("abs-regular", "arm", "trn")

# solver failures that are about the numbers, not the input
_NUMERIC_ERRORS = (SingularMatrixError, SplittingError, StartFailureError,
                   ZeroInProjectionError, BoundUnavailableError, ArithmeticError)


def format_value(v: float) -> str:
    return f"{v:.17g}"


def format_solution(x: IntervalVector) -> str:
    return "".join(f"[{format_value(lo)},{format_value(hi)}]\n" for lo, hi in zip(x.lo, x.hi))


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_problem(args) -> Problem:
    p = parse_problem(_read(args.input))
    return Problem(p.A, p.b, args.dualize_matrix, args.dualize_rhs)


def _print_report(report: SolveReport, fmt: str, err) -> None:
    banner = None
    if report.status is not Status.CONVERGED:
        banner = (f"WARNING: not converged (status {report.status.value}); "
                  "printed values are the last iterate, not a formal solution")
    if fmt == "json":
        d = report.as_dict()
        if banner:
            d["banner"] = banner
        print(json.dumps(d), file=err)
        return
    if banner:
        print(banner, file=err)
    print(f"method: {report.method}", file=err)
    print(f"status: {report.status.value}", file=err)
    print(f"iterations: {report.iterations}", file=err)
    print(f"residual: {report.residual:.6g}", file=err)
    if report.rho_estimate is not None:
        print(f"rho estimate: {report.rho_estimate:.6g}", file=err)
    for w in report.warnings:
        print(f"note: {w}", file=err)


def solve_problem(problem: Problem, method: str = "armsplit", tol: float | None = None,
                  max_iter: int | None = None, tau: float = 1.0):
    """Dispatch to a solver; returns ``(x, SolveReport)``."""
    A, b = problem.system()
    if method == "newton":
        opts = NewtonOptions(tau=tau, tol=NewtonOptions.tol if tol is None else tol,
                             max_iter=NewtonOptions.max_iter if max_iter is None else max_iter)
        return newton_solve(A, b, opts)
    tol = DEFAULT_TOL if tol is None else tol
    max_iter = DEFAULT_MAX_ITER if max_iter is None else max_iter
    if method == "trnsplit":
        return trn_iterate(A, b, tol=tol, max_iter=max_iter)
    variant = "markov" if method == "armsplit" else "simple"
    return arm_iterate(A, b, tol=tol, max_iter=max_iter, variant=variant)


def cmd_solve(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    problem = _load_problem(args)
    try:
        x, report = solve_problem(problem, args.method, args.tol, args.max_iter, args.tau)
    except _NUMERIC_ERRORS as e:
        print(f"error: {e}", file=err)
        return EXIT_NUMERIC
    _print_report(report, args.report, err)
    if x is not None:
        out.write(format_solution(x))
    return EXIT_OK if report.converged else EXIT_NUMERIC


def _verdict(ok: bool) -> str:
    return "satisfied" if ok else "not satisfied"


def cmd_check(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    A, _ = _load_problem(args).system()
    try:
        if args.criterion == "abs-regular":
            Q = mid_matrix(A)
            reg = is_absolutely_regular(Q)
            print(f"mid(A) pivot ratio: {reg.q_pivot_ratio:.6g} (threshold {PIVOT_TOL:g})", file=out)
            print(f"|mid(A)| pivot ratio: {reg.abs_q_pivot_ratio:.6g} (threshold {PIVOT_TOL:g})",
                  file=out)
            if reg.failed:
                print(f"reason: {reg.failed}", file=out)
            ok = bool(reg)
            print(f"absolute regularity: {_verdict(ok)}", file=out)
        elif args.criterion == "arm":
            split = arm_split_markov(A) if args.method != "armsplit-simple" else arm_split_simple(A)
            crit = arm_convergence_criterion(split)
            print(f"rho(|V||H|~): {crit.rho:.17g} (threshold 1)", file=out)
            if not crit.converged:
                print("note: spectral radius estimate did not converge", file=out)
            ok = crit.satisfied
            print(f"ARMSplit ({split.variant}) criterion: {_verdict(ok)}", file=out)
        else:
            split = trn_split(A)
            crit = trn_convergence_criterion(split.A)
            print(f"row order: {' '.join(str(i + 1) for i in split.perm)}", file=out)
            print(f"rho(Q): {crit.rho_Q:.17g} (threshold 1)", file=out)
            print(f"max s_i: {float(np.max(crit.s)):.17g} (threshold 1)", file=out)
            print(f"diagonal dominance: {'yes' if crit.diag_dominant else 'no'}", file=out)
            ok = crit.satisfied
            print(f"TrnSplit criterion: {_verdict(ok)}", file=out)
    except _NUMERIC_ERRORS as e:
        print(f"error: {e}", file=err)
        return EXIT_NUMERIC
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_verify(args, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    A, b = _load_problem(args).system()
    x = parse_vector(_read(args.solution))
    if len(x) != len(b):
        raise ShapeError(f"solution has {len(x)} components, problem has {len(b)}")
    r = residual(A, x, b)
    print(f"residual: {r:.17g}", file=out)
    ok = r <= args.tol
    print("verified" if ok else f"not a formal solution within tol {args.tol:g}", file=out)
    return EXIT_OK if ok else EXIT_NUMERIC


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kaucher", description="Formal solutions of interval linear systems in Kaucher arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-i", "--input", help="problem file (default: standard input)")
        p.add_argument("--dualize-matrix", action="store_true", help="replace A by dual A")
        p.add_argument("--dualize-rhs", action="store_true", help="replace b by dual b")

    p = sub.add_parser("solve", help="compute a formal solution")
    common(p)
    p.add_argument("-m", "--method", choices=METHODS, default="armsplit")
    p.add_argument("--tol", type=float, default=None,
                   help="stopping tolerance (default 1e-10 for splittings, 1e-12 for newton)")
    p.add_argument("--max-iter", type=_positive_int, default=None,
                   help="iteration cap (default 500 for splittings, 100 for newton)")
    p.add_argument("--tau", type=float, default=1.0, help="newton damping factor in (0, 1]")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="evaluate a convergence or regularity criterion")
    common(p)
    p.add_argument("--criterion", choices=CRITERIA, required=True)
    p.add_argument("-m", "--method", choices=("armsplit", "armsplit-simple"), default="armsplit",
                   help="splitting variant for --criterion arm")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="check a candidate solution by its residual")
    common(p)
    p.add_argument("--solution", required=True, help="file with one interval per line")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; usage errors are input errors here
        return EXIT_INPUT if e.code else EXIT_OK
    if args.command == "solve" and not 0.0 < args.tau <= 1.0:
        print("error: --tau must lie in (0, 1]", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (ProblemSyntaxError, ShapeError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except KaucherError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
