"""Command-line entry point: ``wfroot solve|verify|bench|catalog``.

Exit codes: 0 success, 1 usage error, 2 solver failure, 3 symbolic discrepancy,
4 benchmark cell differs from the published table.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench
from .numerics import ConfigurationError, ParseError, format_error, format_real, make_context, parse_rational
from .oracle import (
    compare_with_published,
    derive_error_equation,
    format_error_equation,
    symbolic_scheme,
    vanishing_set,
    verify_theorem,
)
from .problems import BUILTIN_IDS, CatalogError, ProblemDefinitionError, builtin_problem, load_problems
from .solvers import SolverConfig, efficiency_index, estimate_coc, solve
from .weights import CATALOG_NAMES, SchemeKind, UnknownSchemeError, catalog, check_fourth_order, check_third_order

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_DISCREPANCY, EXIT_FLAGGED = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _gamma(text, *, warn=True):
    if text is None:
        return None
    try:
        g = parse_rational(text)
    except ParseError as exc:
        raise UsageError(str(exc)) from None
    if warn and "/" not in str(text) and "." in str(text):
        print(f"warning: gamma {text} read as the exact rational {g}", file=sys.stderr)
    return g


def _scheme(name, gamma):
    try:
        return catalog(name, gamma)
    except UnknownSchemeError:
        raise UsageError(f"unknown method {name!r}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _problem(source, label=None):
    if source in BUILTIN_IDS:
        return builtin_problem(source)
    path = Path(source)
    if not path.is_file():
        raise UsageError(f"unknown problem {source!r}: not a builtin id ({', '.join(BUILTIN_IDS)}) or a file")
    try:
        problems = load_problems(path)
    except (ProblemDefinitionError, UnicodeDecodeError) as exc:
        raise UsageError(f"{source}: {exc}") from None
    if label is not None:
        problems = [p for p in problems if p.label == label]
    if not problems:
        raise UsageError(f"{source}: no matching problem")
    return problems[0]


def cmd_solve(args) -> int:
    p = _problem(args.problem, args.label)
    s = _scheme(args.method, _gamma(args.gamma))
    try:
        ctx = make_context(args.digits)
        if args.tol is not None:
            cfg = SolverConfig(args.max_iters, args.tol, ctx)
        else:
            cfg = SolverConfig(args.iters, None, ctx)
    except (ConfigurationError, ParseError) as exc:
        raise UsageError(str(exc)) from None
    if args.x0 is None and p.x0_text is None:
        raise UsageError("--x0 is required for this problem")
    try:
        trace = solve(p, s, args.x0, cfg)
    except ParseError as exc:
        raise UsageError(str(exc)) from None
    print(f"{s.label} on {p.label}, x0 = {format_real(trace.x0, 20)}, {args.digits} digits")
    for step in trace.iterates:
        err = "" if step.error is None else f"  |x-alpha|={format_error(step.error)}"
        print(f"n={step.n}  x={format_real(step.x, 30)}  |f(x)|={format_error(step.residual)}{err}")
    if trace.terminated_by == "failure":
        print(f"failure: {trace.failure}", file=sys.stderr)
        return EXIT_SOLVER
    if trace.last is not None and trace.last.error is not None:
        print(f"final error: {format_error(trace.last.error)}")
    coc = estimate_coc(trace)
    if coc.estimable:
        print(f"COC: {format_real(coc.estimated_order, 6)}")
    else:
        print(f"COC: not estimable ({coc.reason})")
    if args.tol is not None and trace.terminated_by != "tolerance":
        print(f"tolerance {args.tol} not reached in {cfg.max_iterations} iterations", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def _print_conditions(spec) -> None:
    if spec.kind is SchemeKind.THIRD_ORDER:
        print(f"conditions: {check_third_order(spec.A)}")
    elif spec.kind is SchemeKind.FOURTH_ORDER:
        print(f"conditions: {check_fourth_order(spec.P, spec.Q, spec.a)}")


def cmd_verify(args) -> int:
    if args.theorem is not None:
        report = verify_theorem(args.theorem, args.truncation)
        print("\n".join(report.lines()))
        return EXIT_OK if report.proved and report.matches_published else EXIT_DISCREPANCY
    gamma = _gamma(args.gamma)
    if args.method not in CATALOG_NAMES:
        raise UsageError(f"unknown method {args.method!r}")
    symbolic_gamma = args.method in ("gamma3", "m4") and gamma is None
    if not symbolic_gamma:
        _print_conditions(_scheme(args.method, gamma))
    cmp = compare_with_published(args.method, gamma, args.truncation)
    print(f"method: {args.method}" + (f" (gamma={gamma})" if gamma is not None else ""))
    print(f"order: {cmp.derived.order}")
    print(f"leading coefficient: {cmp.derived.leading_coefficient}")
    print(format_error_equation(cmp.derived))
    if symbolic_gamma and cmp.derived.leading_coefficient.degree("gamma") > 0:
        roots = vanishing_set(cmp.derived.leading_coefficient, "gamma")
        print(f"e^{cmp.derived.order} coefficient vanishes for gamma in {[str(r) for r in roots]}")
        for r in roots:
            eq = derive_error_equation(symbolic_scheme(args.method, r), args.truncation)
            print(f"  at gamma={r}: {format_error_equation(eq)}")
    print(cmp.describe())
    return EXIT_DISCREPANCY if cmp.discrepancy else EXIT_OK


def cmd_bench(args) -> int:
    methods = args.methods.split(",") if args.methods else list(bench.TABLE_METHODS)
    methods = [m.strip() for m in methods if m.strip()]
    gamma = _gamma(args.gamma)
    for m in methods:
        _scheme(m, gamma if m in ("gamma3", "m4") else None)
    try:
        if args.table is not None:
            if args.table not in bench.REFERENCE_TABLES:
                raise UsageError(f"no table {args.table}; expected one of {sorted(bench.REFERENCE_TABLES)}")
            ref = bench.REFERENCE_TABLES[args.table]
            run = bench.run_benchmark(ref.problem_id, methods, args.x0 or ref.x0, args.iters,
                                      args.digits, gamma, reference=ref)
        else:
            p = _problem(args.problem, args.label)
            ref = bench.reference_for(p.label) if p.label in BUILTIN_IDS else None
            if ref is not None and args.x0 is not None and parse_rational(args.x0) != parse_rational(ref.x0):
                ref = None
            run = bench.run_benchmark(p, methods, args.x0, args.iters, args.digits, gamma, reference=ref)
    except (ConfigurationError, ParseError) as exc:
        raise UsageError(str(exc)) from None
    if args.digits != 200 and run.table is not None:
        run.status = [[None] * len(r) for r in run.status]
    text = bench.emit(run, args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    return EXIT_FLAGGED if run.flagged else EXIT_OK


def _ei(order: int, evals: int) -> str:
    return f"{efficiency_index(order, evals):.3f}"


def catalog_lines() -> list[str]:
    lines = []
    for name in CATALOG_NAMES:
        if name == "gamma3":
            lines.append(
                f"gamma3  order=3  A(t)=(3-t)/2+gamma(t-1)^2  EI={_ei(3, 3)}  conditions=ok for every gamma"
            )
            continue
        if name == "m4":
            eq = derive_error_equation(symbolic_scheme("m4"))
            roots = ", ".join(str(r) for r in vanishing_set(eq.leading_coefficient, "gamma"))
            lines.append(
                f"m4  order=4 only at gamma={roots} (order 3 otherwise)  EI(3 evals)={_ei(4, 3)}  "
                "P(t)=3/2-t/2+(t-1)^2  Q(t)=(9/4-gamma)+(2gamma-9/4)t+(1-gamma)t^2  "
                f"conditions=ok only at gamma={roots}"
            )
            continue
        s = catalog(name)
        evals = s.evaluations_per_iteration
        if s.kind is SchemeKind.NEWTON:
            lines.append(f"newton  order=2  EI={_ei(2, evals)}")
        elif s.kind is SchemeKind.THIRD_ORDER:
            ok = "ok" if check_third_order(s.A).passed else "FAIL"
            lines.append(f"{name}  order=3  A(t)={s.A.formula}  EI={_ei(3, evals)}  conditions={ok}")
        else:
            ok = "ok" if check_fourth_order(s.P, s.Q, s.a).passed else "FAIL"
            lines.append(
                f"{name}  order=4  EI({evals} evals)={_ei(4, evals)}  "
                f"P(t)={s.P.formula}  Q(t)={s.Q.formula}  a={s.a}  conditions={ok}"
            )
    return lines


def cmd_catalog(args) -> int:
    print("\n".join(catalog_lines()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wfroot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="iterate a method on a problem")
    p.add_argument("--problem", default="f1", help="builtin id (f1..f4) or problem file")
    p.add_argument("--label", help="problem label inside a problem file")
    p.add_argument("--method", required=True)
    p.add_argument("--gamma", help="gamma for gamma3/m4, as p/q or decimal")
    p.add_argument("--x0")
    p.add_argument("--digits", type=int, default=200)
    stop = p.add_mutually_exclusive_group()
    stop.add_argument("--iters", type=int, default=3)
    stop.add_argument("--tol", help="stop once |f(x)| <= tol")
    p.add_argument("--max-iters", type=int, default=100, help="iteration cap with --tol")
    p.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="derive error equations symbolically")
    which = v.add_mutually_exclusive_group(required=True)
    which.add_argument("--method")
    which.add_argument("--theorem", type=int, choices=(1, 2))
    v.add_argument("--gamma")
    v.add_argument("--truncation", type=int, default=5)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="reproduce an error table")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--table", type=int)
    src.add_argument("--problem")
    b.add_argument("--label")
    b.add_argument("--methods", help="comma-separated method names")
    b.add_argument("--gamma")
    b.add_argument("--x0")
    b.add_argument("--iters", type=int, default=3)
    b.add_argument("--digits", type=int, default=200)
    b.add_argument("--format", choices=("md", "markdown", "csv"), default="md")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)

    c = sub.add_parser("catalog", help="list the available methods")
    c.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"wfroot: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CatalogError as exc:
        print(f"wfroot: error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
