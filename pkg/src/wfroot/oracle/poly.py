"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a tuple of ``(symbol, exponent)`` pairs sorted by the canonical
symbol order: ``c2, c3, c4, ...`` first, then weight-jet symbols, then the
scheme parameters ``gamma`` and ``a``.  Terms print in graded lexicographic
order (highest total degree first).
"""

from __future__ import annotations

import ast
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = ["CoeffPoly", "Monomial", "const", "sym", "symbol_key", "display_name"]

Monomial = tuple  # tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]

_JET_ORDER = ["A2", "A3", "P2", "P3", "B2", "B3", "Q2", "Q3", "gamma", "a"]
_DISPLAY = {
    "A2": "A''(1)", "A3": "A'''(1)", "P2": "P''(1)", "P3": "P'''(1)",
    "B2": "B''(1)", "B3": "B'''(1)", "Q2": "Q''(1)", "Q3": "Q'''(1)",
}
_C_RE = re.compile(r"c(\d+)")


def symbol_key(name: str):
    m = _C_RE.fullmatch(name)
    if m:
        return (0, int(m.group(1)), "")
    if name in _JET_ORDER:
        return (1, _JET_ORDER.index(name), "")
    return (2, 0, name)


def display_name(name: str) -> str:
    return _DISPLAY.get(name, name)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for s, k in m2:
        exps[s] = exps.get(s, 0) + k
    return tuple(sorted(exps.items(), key=lambda item: symbol_key(item[0])))


def _canonical(m: Monomial) -> Monomial:
    exps: dict = {}
    for s, k in m:
        exps[s] = exps.get(s, 0) + k
    return tuple(sorted(((s, k) for s, k in exps.items() if k), key=lambda item: symbol_key(item[0])))


def _degree(m: Monomial) -> int:
    return sum(k for _, k in m)


class CoeffPoly:
    """Immutable polynomial; zero coefficients are never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict = {}
        for mono, c in (terms or {}).items():
            mono = _canonical(mono)
            clean[mono] = clean.get(mono, 0) + Fraction(c)
        clean = {m: c for m, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    # -- construction ------------------------------------------------------

    @classmethod
    def const(cls, value: Scalar) -> "CoeffPoly":
        return cls({(): value})

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "CoeffPoly":
        return cls({((name, power),): 1}) if power else cls.const(1)

    @classmethod
    def parse(cls, text: str) -> "CoeffPoly":
        """Parse arithmetic over symbols and exact numbers, e.g. ``"(1/9)*(c4 - 9*c2*c3)"``.

        ``^`` and ``**`` both mean power; division is only allowed by constants.
        """
        tree = ast.parse(text.replace("^", "**"), mode="eval")
        return _from_ast(tree.body)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def variables(self) -> list[str]:
        names = {s for m in self._terms for s, _ in m}
        return sorted(names, key=symbol_key)

    def degree(self, name: str | None = None) -> int:
        if not self._terms:
            return -1
        if name is None:
            return max(_degree(m) for m in self._terms)
        return max(dict(m).get(name, 0) for m in self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        names = self.variables()

        def key(item):
            m = dict(item[0])
            return (-_degree(item[0]), tuple(-m.get(s, 0) for s in names))

        return sorted(self._terms.items(), key=key)

    def content(self) -> Fraction:
        """Positive rational ``r`` such that ``self / r`` has coprime integer coefficients."""
        if not self._terms:
            return Fraction(1)
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        g = 0
        for n in nums:
            g = math.gcd(g, n)
        lcm = 1
        for d in dens:
            lcm = lcm * d // math.gcd(lcm, d)
        return Fraction(g, lcm)

    def coefficients_in(self, name: str) -> dict[int, "CoeffPoly"]:
        """View as a polynomial in ``name`` whose coefficients involve the other symbols."""
        out: dict[int, dict] = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            k = d.pop(name, 0)
            rest = tuple(sorted(d.items(), key=lambda it: symbol_key(it[0])))
            out.setdefault(k, {})[rest] = c
        return {k: CoeffPoly(v) for k, v in out.items()}

    def split_by_monomials_excluding(self, name: str) -> dict[Monomial, dict[int, Fraction]]:
        """Group terms by their monomial in every symbol except ``name``.

        Each group is a univariate polynomial in ``name`` given as ``{power: coeff}``.
        """
        groups: dict[Monomial, dict[int, Fraction]] = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            k = d.pop(name, 0)
            rest = tuple(sorted(d.items(), key=lambda it: symbol_key(it[0])))
            groups.setdefault(rest, {})[k] = c
        return groups

    # -- evaluation ----------------------------------------------------------

    def substitute(self, values: Mapping[str, Union[Scalar, "CoeffPoly"]]) -> "CoeffPoly":
        result = CoeffPoly()
        for mono, c in self._terms.items():
            term = CoeffPoly.const(c)
            for s, k in mono:
                if s in values:
                    term = term * _coerce(values[s]) ** k
                else:
                    term = term * CoeffPoly.symbol(s, k)
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, object]):
        """Numeric value; ``values`` must cover every symbol (Reals, floats or Fractions)."""
        total = 0
        for mono, c in self._terms.items():
            term = c
            for s, k in mono:
                term = term * values[s] ** k
            total = total + term
        return total

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0) + c
        return CoeffPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return CoeffPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CoeffPoly({m: c * other for m, c in self._terms.items()})
        other = _coerce(other)
        terms: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return CoeffPoly(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CoeffPoly):
            if other.is_zero():
                raise ZeroDivisionError("division by the zero polynomial")
            if not other.is_constant():
                raise ValueError("division only by nonzero constants")
            other = other.constant_term()
        other = Fraction(other)
        return CoeffPoly({m: c / other for m, c in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = CoeffPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CoeffPoly.const(other)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"CoeffPoly({str(self)!r})"

    def __str__(self):
        return self.to_string()

    def to_string(self, pretty: bool = False) -> str:
        """Plain (``1/9*c4``) or display form (``(1/9) c4``, ``A''(1)``)."""
        if not self._terms:
            return "0"
        pieces = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = [
                (display_name(s) if pretty else s) + (f"^{k}" if k > 1 else "")
                for s, k in mono
            ]
            joiner = " " if pretty else "*"
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = joiner.join(factors)
            else:
                coef = f"({mag})" if pretty and mag.denominator != 1 else str(mag)
                body = joiner.join([coef] + factors)
            if i == 0:
                pieces.append(("-" if sign == "-" else "") + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)


def _coerce(x) -> CoeffPoly:
    if isinstance(x, CoeffPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return CoeffPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial coefficient")


def const(value: Scalar) -> CoeffPoly:
    return CoeffPoly.const(value)


def sym(name: str) -> CoeffPoly:
    return CoeffPoly.symbol(name)


def _from_ast(node) -> CoeffPoly:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return const(node.value)
    if isinstance(node, ast.Name):
        return sym(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _from_ast(node.operand)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        left = _from_ast(node.left)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("exponents must be integer literals")
            return left ** node.right.value
        right = _from_ast(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    raise ValueError(f"unsupported syntax: {ast.dump(node)}")


def rational_roots(coeffs: Mapping[int, Fraction]) -> list[Fraction]:
    """Rational roots of a univariate polynomial ``{power: coeff}`` (rational-root theorem)."""
    if not coeffs or all(c == 0 for c in coeffs.values()):
        raise ValueError("the zero polynomial vanishes everywhere")
    deg = max(k for k, c in coeffs.items() if c)
    low = min(k for k, c in coeffs.items() if c)
    lcm = 1
    for c in coeffs.values():
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(coeffs.get(k, 0) * lcm) for k in range(low, deg + 1)]
    roots = [Fraction(0)] if low > 0 else []
    a0, an = abs(ints[0]), abs(ints[-1])
    if deg == low:
        return roots
    candidates = set()
    for p in _divisors(a0):
        for q in _divisors(an):
            candidates.add(Fraction(p, q))
            candidates.add(Fraction(-p, q))
    for r in sorted(candidates):
        if sum(c * r**i for i, c in enumerate(ints)) == 0:
            roots.append(r)
    return sorted(roots)


def _divisors(n: int) -> Iterable[int]:
    out = set()
    for i in range(1, math.isqrt(n) + 1):
        if n % i == 0:
            out.update((i, n // i))
    return out
