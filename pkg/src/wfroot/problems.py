"""Scalar test problems: the four benchmark functions plus user-defined ones.

Every evaluator accepts either an ``mpf`` (and then works in that value's own
context) or a plain ``float`` (evaluated with :data:`mpmath.fp`), which is what
the finite-difference consistency checks use.
"""

from __future__ import annotations

import functools
import re
from tokenize import TokenError
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import mpmath
import sympy as sp
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    rationalize,
    standard_transformations,
)

from .numerics import PrecisionContext, Real

__all__ = [
    "BUILTIN_IDS",
    "CatalogError",
    "EvaluationError",
    "Problem",
    "ProblemDefinitionError",
    "RootRefinementError",
    "builtin_problem",
    "evaluate",
    "load_problems",
    "parse_problem_text",
    "problem_from_expressions",
    "reference_root",
    "suggested_x0",
]


class CatalogError(KeyError):
    pass


class EvaluationError(ArithmeticError):
    """A problem evaluated to a non-finite value; ``x`` is the offending point."""

    def __init__(self, message: str, x=None):
        super().__init__(message)
        self.x = x


class RootRefinementError(ArithmeticError):
    pass


class ProblemDefinitionError(ValueError):
    pass


def _ops(x):
    return getattr(x, "context", mpmath.fp)


@dataclass(frozen=True)
class Problem:
    """A function, its analytic derivative and optional root / starting point.

    ``root_text`` and ``x0_text`` are decimal strings so the same problem can be
    materialised at any precision; see :func:`reference_root`.
    """

    label: str
    f: Callable
    fprime: Callable
    root_text: Optional[str] = None
    x0_text: Optional[str] = None
    f_text: str = ""
    fprime_text: str = ""

    def __call__(self, x):
        return self.f(x)


def _f1(x):
    m = _ops(x)
    return m.exp(-x) - 1 + x / 5


def _f1p(x):
    m = _ops(x)
    return -m.exp(-x) + m.mpf(1) / 5


# (x^3 + 2.87 x^2 - 10.28)/4.62 - x, decimal constants scaled to integers
def _f2(x):
    return (100 * x**3 + 287 * x**2 - 1028) / 462 - x


def _f2p(x):
    return (300 * x**2 + 574 * x) / 462 - 1


def _f3(x):
    m = _ops(x)
    return (x + m.cos(x) * m.sin(x)) / m.pi - m.mpf(1) / 4


def _f3p(x):
    m = _ops(x)
    return (1 + m.cos(2 * x)) / m.pi


def _f4(x):
    m = _ops(x)
    return x * m.exp(-x) - m.mpf(1) / 10


def _f4p(x):
    return _ops(x).exp(-x) * (1 - x)


_BUILTINS = {
    "f1": Problem(
        "f1", _f1, _f1p, "4.9651142317442763036", "5",
        "exp(-x) - 1 + x/5", "-exp(-x) + 1/5",
    ),
    "f2": Problem(
        "f2", _f2, _f2p, "2.0021187789538272889", "2.5",
        "(x^3 + 2.87 x^2 - 10.28)/4.62 - x", "(3 x^2 + 5.74 x)/4.62 - 1",
    ),
    "f3": Problem(
        "f3", _f3, _f3p, "0.4158555967898679887", "0.4",
        "(x + cos(x) sin(x))/pi - 1/4", "(1 + cos(2x))/pi",
    ),
    "f4": Problem(
        "f4", _f4, _f4p, "0.1118325591589629648", "0.3",
        "x exp(-x) - 0.1", "exp(-x) (1 - x)",
    ),
}

BUILTIN_IDS = tuple(_BUILTINS)


def builtin_problem(problem_id: str) -> Problem:
    try:
        return _BUILTINS[problem_id]
    except KeyError:
        raise CatalogError(
            f"unknown problem {problem_id!r}; expected one of {', '.join(BUILTIN_IDS)}"
        ) from None


def evaluate(p: Problem, x: Real):
    """Return ``(f(x), f'(x))``, raising :class:`EvaluationError` on non-finite values."""
    m = _ops(x)
    try:
        fx = p.f(x)
        fpx = p.fprime(x)
    except (OverflowError, ZeroDivisionError, ValueError) as exc:
        raise EvaluationError(f"{p.label}: evaluation failed at x={x}: {exc}", x) from exc
    if not (m.isfinite(fx) and m.isfinite(fpx)):
        raise EvaluationError(f"{p.label}: non-finite value at x={x}", x)
    return fx, fpx


def suggested_x0(p: Problem, ctx: PrecisionContext) -> Real:
    if p.x0_text is None:
        raise ValueError(f"{p.label} has no suggested starting point")
    return ctx.real(p.x0_text)


def reference_root(p: Problem, ctx: PrecisionContext) -> Optional[Real]:
    """The stored root, polished by Newton's method to full working precision.

    The polished root must stay within a few units of the last printed digit,
    otherwise iteration wandered off to some other root and we refuse it.
    """
    if p.root_text is None:
        return None
    # cached per digit count; rebind so the result belongs to the caller's context
    return ctx.mp.mpf(_refined_root(p, ctx.decimal_digits))


@functools.lru_cache(maxsize=64)
def _refined_root(p: Problem, digits: int) -> Real:
    ctx = PrecisionContext(digits)
    m = ctx.mp
    x = ctx.real(p.root_text)
    tiny = m.mpf(10) ** (-m.dps)
    for _ in range(100):
        fx, fpx = evaluate(p, x)
        if fpx == 0:
            raise RootRefinementError(f"{p.label}: zero derivative at the stored root")
        dx = fx / fpx
        x -= dx
        if abs(dx) <= tiny * max(1, abs(x)):
            break
    residual = abs(p.f(x))
    if residual > m.mpf(10) ** (8 - ctx.decimal_digits):
        raise RootRefinementError(f"{p.label}: residual {residual} after refinement")
    decimals = len(p.root_text.split(".")[1]) if "." in p.root_text else 0
    if abs(x - ctx.real(p.root_text)) > 10 * m.mpf(10) ** (-decimals):
        raise RootRefinementError(f"{p.label}: refinement left the printed root")
    return x


# --- user-defined problems -------------------------------------------------

_X = sp.Symbol("x")
_ALLOWED_NAMES = {"x", "exp", "ln", "log", "sin", "cos", "pi"}
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_TOKEN_RE = re.compile(r"^[\sA-Za-z0-9_.+\-*/^()]*$")
_FUNCS = {sp.exp: "exp", sp.log: "log", sp.sin: "sin", sp.cos: "cos"}


def _parse_expression(text: str) -> sp.Expr:
    if not _TOKEN_RE.match(text):
        raise ProblemDefinitionError(f"illegal character in expression {text!r}")
    bad = set(_NAME_RE.findall(text)) - _ALLOWED_NAMES
    if bad:
        raise ProblemDefinitionError(f"unknown names {sorted(bad)} in {text!r}")
    try:
        expr = parse_expr(
            text,
            local_dict={"x": _X, "exp": sp.exp, "ln": sp.log, "log": sp.log,
                        "sin": sp.sin, "cos": sp.cos, "pi": sp.pi},
            transformations=standard_transformations
            + (convert_xor, implicit_multiplication_application, rationalize),
        )
    except (SyntaxError, TypeError, TokenError, sp.SympifyError) as exc:
        raise ProblemDefinitionError(f"cannot parse {text!r}: {exc}") from exc
    if expr.free_symbols - {_X}:
        raise ProblemDefinitionError(f"expression {text!r} must depend on x only")
    return expr


def _compile(expr: sp.Expr) -> Callable:
    """Turn a sympy tree into a closure that evaluates in the argument's context.

    Rational constants are rounded once, in the argument's context, so decimal
    literals such as 2.87 never pass through binary doubles.
    """
    if expr == _X:
        return lambda x: x
    if expr.is_Integer:
        v = int(expr)
        return lambda x: v
    if expr.is_Rational:
        p, q = int(expr.p), int(expr.q)
        return lambda x: _ops(x).mpf(p) / q
    if expr is sp.pi:
        return lambda x: _ops(x).pi
    if expr is sp.E:
        return lambda x: _ops(x).e
    if expr.is_Add:
        parts = [_compile(a) for a in expr.args]
        return lambda x: sum((g(x) for g in parts[1:]), parts[0](x))
    if expr.is_Mul:
        parts = [_compile(a) for a in expr.args]

        def mul(x):
            acc = parts[0](x)
            for g in parts[1:]:
                acc = acc * g(x)
            return acc

        return mul
    if expr.is_Pow:
        base = _compile(expr.base)
        exp_ = expr.exp
        if exp_.is_Integer:
            k = int(exp_)
            if k < 0:
                return lambda x: 1 / base(x) ** (-k)
            return lambda x: base(x) ** k
        power = _compile(exp_)
        return lambda x: _ops(x).power(base(x), power(x))
    if expr.func in _FUNCS:
        (arg,) = expr.args
        inner = _compile(arg)
        name = _FUNCS[expr.func]
        return lambda x: getattr(_ops(x), name)(inner(x))
    raise ProblemDefinitionError(f"unsupported construct {expr}")


def problem_from_expressions(
    label: str,
    f_text: str,
    fprime_text: Optional[str] = None,
    root: Optional[str] = None,
    x0: Optional[str] = None,
) -> Problem:
    """Build a problem from expression strings.

    The grammar is ``x``, numbers, ``+ - * / ^`` and ``exp ln sin cos pi``.
    Without ``fprime_text`` the derivative is obtained symbolically.
    """
    f_expr = _parse_expression(f_text)
    if fprime_text:
        fp_expr = _parse_expression(fprime_text)
    else:
        fp_expr = sp.diff(f_expr, _X)
        fprime_text = str(fp_expr).replace("**", "^")
    return Problem(
        label,
        _compile(f_expr),
        _compile(fp_expr),
        root,
        x0,
        f_text,
        fprime_text,
    )


_KEYS = {"label", "f", "fprime", "root", "x0"}


def parse_problem_text(text: str) -> list[Problem]:
    """Parse ``key=value`` blocks separated by blank lines.

    Recognised keys: label, f, fprime, root, x0; ``#`` starts a comment line.
    """
    problems = []
    for block in re.split(r"\n\s*\n", text):
        record = {}
        for raw in block.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep or key not in _KEYS:
                raise ProblemDefinitionError(f"bad line {raw!r}")
            record[key] = value.strip()
        if not record:
            continue
        if "label" not in record or "f" not in record:
            raise ProblemDefinitionError(f"record needs label and f: {record}")
        problems.append(
            problem_from_expressions(
                record["label"], record["f"], record.get("fprime"),
                record.get("root"), record.get("x0"),
            )
        )
    return problems


def load_problems(path) -> list[Problem]:
    return parse_problem_text(Path(path).read_text(encoding="ascii"))
