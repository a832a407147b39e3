"""Mechanised error equations for Newton, ``x - A(t) u`` and ``x - P(t) Q(t) u``.

Everything is expanded about a simple root ``alpha`` in powers of the current
error ``e = x - alpha``, with ``f`` normalised by ``f'(alpha)`` so that
``f(x) = e + c2 e^2 + c3 e^3 + ...`` and ``c_h = f^(h)(alpha) / (h! f'(alpha))``.
Weights enter through their jets at ``t = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Optional, Sequence, Union

from ..weights import SchemeKind, SchemeSpec, WeightJet, catalog
from .poly import CoeffPoly, const, rational_roots, sym
from .series import ESeries, compose_into_polynomial, expand_weight, series_mul, series_reciprocal

__all__ = [
    "Comparison",
    "ErrorEquation",
    "InconclusiveOrderError",
    "PUBLISHED",
    "PublishedEquation",
    "SymbolicScheme",
    "SymbolicWeight",
    "TheoremReport",
    "compare_with_published",
    "derive_error_equation",
    "format_error_equation",
    "from_spec",
    "generic_fourth_order",
    "generic_third_order",
    "symbolic_scheme",
    "taylor_expansions",
    "vanishing_set",
    "verify_theorem",
]


class InconclusiveOrderError(ArithmeticError):
    """Every coefficient vanished up to the exactly-known power; raise the truncation."""


@dataclass(frozen=True)
class SymbolicWeight:
    """A weight given by its jet at ``t = 1`` and, optionally, exact rational form."""

    jet: tuple[CoeffPoly, ...]
    numerator: Optional[tuple[CoeffPoly, ...]] = None
    denominator: Optional[tuple[CoeffPoly, ...]] = None

    @classmethod
    def from_jet(cls, w: WeightJet) -> "SymbolicWeight":
        return cls(
            tuple(const(v) for v in w.jet),
            tuple(const(c) for c in w.numerator),
            tuple(const(c) for c in w.denominator),
        )


@dataclass(frozen=True)
class SymbolicScheme:
    name: str
    kind: SchemeKind
    a: CoeffPoly = field(default_factory=lambda: const(1))
    weights: Mapping[str, SymbolicWeight] = field(default_factory=dict)


def from_spec(spec: SchemeSpec) -> SymbolicScheme:
    return SymbolicScheme(
        spec.name,
        spec.kind,
        const(spec.a),
        {k: SymbolicWeight.from_jet(w) for k, w in spec.weights().items()},
    )


def _polys(*values) -> tuple[CoeffPoly, ...]:
    return tuple(v if isinstance(v, CoeffPoly) else const(v) for v in values)


def generic_third_order() -> SymbolicScheme:
    """``A(1) = 1``, ``A'(1) = -1/2``; ``A''(1)`` and ``A'''(1)`` stay free."""
    A = SymbolicWeight(_polys(1, Fraction(-1, 2), sym("A2"), sym("A3")))
    return SymbolicScheme("theorem1", SchemeKind.THIRD_ORDER, const(1), {"A": A})


def generic_fourth_order(a: Union[None, Fraction, CoeffPoly] = None) -> SymbolicScheme:
    """P and Q obeying the fourth-order conditions; ``a`` defaults to 2/3.

    Free symbols: ``P2 = P''(1)``, ``P3 = P'''(1)``, ``Q3 = Q'''(1)``;
    ``Q''(1)`` is tied to ``2 - P''(1)``.
    """
    if a is None:
        a = Fraction(2, 3)
    P = SymbolicWeight(_polys(1, Fraction(-1, 2), sym("P2"), sym("P3")))
    Q = SymbolicWeight(_polys(1, Fraction(-1, 4), 2 - sym("P2"), sym("Q3")))
    a = a if isinstance(a, CoeffPoly) else const(a)
    return SymbolicScheme("theorem2", SchemeKind.FOURTH_ORDER, a, {"P": P, "Q": Q})


def symbolic_scheme(name: str, gamma=None) -> SymbolicScheme:
    """Catalog scheme with exact jets; ``gamma3``/``m4`` keep ``gamma`` symbolic when omitted."""
    if name not in ("gamma3", "m4") or gamma is not None:
        return from_spec(catalog(name, gamma))
    g = sym("gamma")
    half = Fraction(1, 2)
    if name == "gamma3":
        A = SymbolicWeight(
            _polys(1, -half, 2 * g, 0),
            _polys(Fraction(3, 2) + g, -half - 2 * g, g),
            _polys(1),
        )
        return SymbolicScheme(name, SchemeKind.THIRD_ORDER, const(1), {"A": A})
    spec = catalog("m4", 0)
    P = SymbolicWeight.from_jet(spec.P)
    Q = SymbolicWeight(
        _polys(1, Fraction(-1, 4), 2 * (1 - g), 0),
        _polys(Fraction(9, 4) - g, 2 * g - Fraction(9, 4), 1 - g),
        _polys(1),
    )
    return SymbolicScheme(name, SchemeKind.FOURTH_ORDER, const(Fraction(2, 3)), {"P": P, "Q": Q})


# --- expansions ----------------------------------------------------------------

def _c(h: int) -> CoeffPoly:
    return const(1) if h == 1 else sym(f"c{h}")


def taylor_expansions(a: Union[Fraction, int, CoeffPoly] = 1, N: int = 5) -> dict[str, ESeries]:
    """Building blocks of a two-step iteration, all modulo ``e^(N+1)``.

    Keys: ``f`` and ``fprime_x`` (``f(x)``, ``f'(x)`` over ``f'(alpha)``), ``u``
    (``f/f'``), ``y_minus_root``, ``fprime_y`` (``f'(y)/f'(alpha)``), ``t``.
    """
    a = a if isinstance(a, CoeffPoly) else const(a)
    e = ESeries.e(N)
    f = ESeries([0] + [_c(h) for h in range(1, N + 1)], N)
    fprime_x = ESeries([h * _c(h) for h in range(1, N + 2)], N)
    inv_fprime_x = series_reciprocal(fprime_x)
    u = series_mul(f, inv_fprime_x)
    delta = e - u * a
    fprime_y = compose_into_polynomial([h * _c(h) for h in range(1, N + 2)], delta)
    t = series_mul(fprime_y, inv_fprime_x)
    return {
        "f": f,
        "fprime_x": fprime_x,
        "u": u,
        "y_minus_root": delta,
        "fprime_y": fprime_y,
        "t": t,
    }


def _shift_to_one(coeffs: Sequence[CoeffPoly]) -> list[CoeffPoly]:
    """Coefficients of ``p(1 + tau)`` in powers of ``tau``."""
    out = [CoeffPoly() for _ in coeffs]
    for k, c in enumerate(coeffs):
        for j in range(k + 1):
            out[j] = out[j] + c * comb(k, j)
    return out


def rational_weight_series(w: SymbolicWeight, tau: ESeries) -> ESeries:
    """Expand ``num(t)/den(t)`` at ``t = 1 + tau`` directly (geometric series of the denominator)."""
    if w.numerator is None:
        raise ValueError("weight has no rational form")
    num = compose_into_polynomial(_shift_to_one(w.numerator), tau)
    den_coeffs = _shift_to_one(w.denominator)
    d0 = den_coeffs[0]
    if not d0.is_constant() or d0.is_zero():
        raise ValueError("denominator at t=1 must be a nonzero constant")
    den = compose_into_polynomial([c / d0 for c in den_coeffs], tau)
    return series_mul(num, series_reciprocal(den)) * (1 / d0.constant_term())


@dataclass
class ErrorEquation:
    """``e_{n+1} = leading_coefficient * e^order + O(e^(order+1))``."""

    order: int
    leading_coefficient: CoeffPoly
    series: ESeries
    exact_through: int

    def coefficient(self, k: int) -> CoeffPoly:
        if k > self.exact_through:
            raise IndexError(f"coefficient of e^{k} is not exactly known (exact through {self.exact_through})")
        return self.series[k]

    def __str__(self):
        return format_error_equation(self)


def _next_error_series(s: SymbolicScheme, N: int, mode: str) -> tuple[ESeries, int]:
    ex = taylor_expansions(s.a, N)
    e = ESeries.e(N)
    u = ex["u"]
    if s.kind is SchemeKind.NEWTON:
        return e - u, N
    tau = ex["t"] - 1

    def weight(w: SymbolicWeight) -> tuple[ESeries, int]:
        if mode == "rational":
            return rational_weight_series(w, tau), N
        # W(t) u is exact while the first dropped jet term tau^len * u is beyond e^N
        return expand_weight(w.jet, tau), min(N, len(w.jet))

    if s.kind is SchemeKind.THIRD_ORDER:
        W, exact = weight(s.weights["A"])
    else:
        P, exact_p = weight(s.weights["P"])
        Q, exact_q = weight(s.weights["Q"])
        W, exact = series_mul(P, Q), min(exact_p, exact_q)
    return e - series_mul(W, u), exact


def derive_error_equation(
    scheme: Union[SchemeSpec, SymbolicScheme],
    truncation: int = 5,
    mode: str = "jet",
) -> ErrorEquation:
    """First nonvanishing power of ``e_{n+1}`` and its coefficient.

    ``mode="jet"`` expands weights through their stored jets (as the convergence
    theorems do); ``mode="rational"`` expands the exact rational weights instead.
    """
    if truncation < 2:
        raise ValueError("truncation order must be at least 2")
    if isinstance(scheme, SchemeSpec):
        scheme = from_spec(scheme)
    series, exact = _next_error_series(scheme, truncation, mode)
    for k in range(exact + 1):
        if not series[k].is_zero():
            return ErrorEquation(k, series[k], series, exact)
    raise InconclusiveOrderError(
        f"{scheme.name}: all coefficients vanish through e^{exact}; raise the truncation order"
    )


def vanishing_set(poly: CoeffPoly, name: str) -> list[Fraction]:
    """Rational values of ``name`` at which ``poly`` vanishes identically in the other symbols."""
    if poly.is_zero():
        raise ValueError("polynomial is identically zero")
    roots: Optional[set] = None
    for group in poly.split_by_monomials_excluding(name).values():
        if set(group) == {0}:
            return []
        r = set(rational_roots(group))
        roots = r if roots is None else roots & r
    return sorted(roots or ())


# --- published equations --------------------------------------------------------

THEOREM1_COEFFICIENT = CoeffPoly.parse("(1/2)*(c3 - 4*c2^2*(-1 + A2))")
THEOREM2_COEFFICIENT = CoeffPoly.parse(
    "(1/81)*(-81*c2*c3 + 9*c4 + (309 + 24*P2 + 32*P3 + 32*Q3)*c2^3)"
)
# the published fourth-order equation is written in A''(1), A'''(1), B'''(1)
THEOREM2_IDENTIFICATION = {"A''(1)": "P''(1)", "A'''(1)": "P'''(1)", "B'''(1)": "Q'''(1)"}


@dataclass(frozen=True)
class PublishedEquation:
    """A published error equation ``prefactor * [bracket] e^order``."""

    order: int
    bracket: CoeffPoly
    prefactor: Fraction = Fraction(1)
    source: str = ""

    @property
    def coefficient(self) -> CoeffPoly:
        return self.bracket * self.prefactor

    def as_printed(self) -> str:
        """The equation as published: ``prefactor[bracket] e^order``."""
        if self.prefactor == 1:
            return format_error_equation(self.bracket, self.order)
        inner = self.bracket.to_string(pretty=True)
        return f"e_{{n+1}} = ({self.prefactor})[{inner}] e^{self.order} + O(e^{self.order + 1})"

    def at(self, gamma) -> "PublishedEquation":
        if gamma is None:
            return self
        g = Fraction(gamma)
        return PublishedEquation(self.order, self.bracket.substitute({"gamma": g}), self.prefactor, self.source)


def _third_order_case(A2) -> PublishedEquation:
    return PublishedEquation(
        3, THEOREM1_COEFFICIENT.substitute({"A2": Fraction(A2)}) * 2, Fraction(1, 2),
        "general third-order error equation with this A''(1)",
    )


PUBLISHED: dict[str, PublishedEquation] = {
    "newton": PublishedEquation(2, sym("c2"), source="classical Newton error equation"),
    "weerakoon": _third_order_case(Fraction(1, 2)),
    "homeier": _third_order_case(1),
    "chun": _third_order_case(0),
    "gamma3": PublishedEquation(
        3, CoeffPoly.parse("(4 - 8*gamma)*c2^2 + c3"), Fraction(1, 2), "gamma-family error equation"
    ),
    "m1": PublishedEquation(4, CoeffPoly.parse("-9*c2*c3 + c4 + 33*c2^3"), Fraction(1, 9), "Method 1 error equation"),
    "m2": PublishedEquation(
        4, CoeffPoly.parse("-c2*c3 + c4/9 + (79/27)*c2^3"), Fraction(1, 9), "Method 2 error equation"
    ),
    "m3": PublishedEquation(
        4, CoeffPoly.parse("-c2*c3 + c4/9 + (103/27)*c2^3"), Fraction(1, 9), "Method 3 error equation"
    ),
    "m4": PublishedEquation(
        4, CoeffPoly.parse("-27*c2*c3 + 3*c4 + (103 + 16*gamma)*c2^3"), Fraction(1, 27),
        "Method 4 error equation",
    ),
}


@dataclass
class Comparison:
    """Derived versus published error equation for one scheme.

    ``status`` is ``match``, ``prefactor`` (derived equals the published bracket
    without its leading factor), ``order`` or ``coefficient``.
    """

    name: str
    derived: ErrorEquation
    published: PublishedEquation
    status: str

    @property
    def discrepancy(self) -> bool:
        return self.status != "match"

    def describe(self) -> str:
        pub = self.published.as_printed()
        if self.status == "match":
            return f"matches the published equation: {pub}"
        if self.status == "prefactor":
            return (
                f"DISCREPANCY: published {pub}; the derived coefficient equals the published "
                f"bracket without its leading factor {self.published.prefactor}"
            )
        if self.status == "order":
            return f"DISCREPANCY: published order {self.published.order}, derived order {self.derived.order}"
        return f"DISCREPANCY: published {pub}, derived {format_error_equation(self.derived)}"


def compare_with_published(name: str, gamma=None, truncation: int = 5) -> Comparison:
    derived = derive_error_equation(symbolic_scheme(name, gamma), truncation)
    published = PUBLISHED[name].at(gamma)
    if derived.order != published.order:
        status = "order"
    elif derived.leading_coefficient == published.coefficient:
        status = "match"
    elif derived.leading_coefficient == published.bracket:
        status = "prefactor"
    else:
        status = "coefficient"
    return Comparison(name, derived, published, status)


@dataclass
class TheoremReport:
    theorem: int
    proved: bool
    vanishing: dict[int, bool]
    derived: ErrorEquation
    published: CoeffPoly
    matches_published: bool
    counterexample: Optional[tuple[int, CoeffPoly]] = None
    identification: dict[str, str] = field(default_factory=dict)
    a_solutions: Optional[list[Fraction]] = None

    def lines(self) -> list[str]:
        out = [f"theorem {self.theorem}: {'proved' if self.proved else 'NOT proved'}"]
        for k, ok in self.vanishing.items():
            out.append(f"  coefficient of e^{k}: {'0' if ok else 'nonzero'}")
        out.append(f"  {format_error_equation(self.derived)}")
        if self.identification:
            pairs = ", ".join(f"{k} -> {v}" for k, v in self.identification.items())
            out.append(f"  published symbols read as: {pairs}")
        out.append(f"  published coefficient {'matches' if self.matches_published else 'DIFFERS'}")
        if self.a_solutions is not None:
            out.append(f"  e^2 coefficient with a free vanishes for a in {[str(r) for r in self.a_solutions]}")
        if self.counterexample:
            k, poly = self.counterexample
            out.append(f"  counterexample: e^{k} coefficient {poly}")
        return out


def verify_theorem(which: Union[int, str], truncation: int = 5) -> TheoremReport:
    """Prove the third- (``1``) or fourth-order (``2``) conditions symbolically."""
    which = int(str(which).replace("theorem", ""))
    if which == 1:
        scheme, expected, asserted = generic_third_order(), THEOREM1_COEFFICIENT, (1, 2)
    elif which == 2:
        scheme, expected, asserted = generic_fourth_order(), THEOREM2_COEFFICIENT, (1, 2, 3)
    else:
        raise ValueError("which must be 1 or 2")
    series, exact = _next_error_series(scheme, truncation, "jet")
    vanishing = {k: series[k].is_zero() for k in asserted}
    counterexample = next(((k, series[k]) for k in asserted if not series[k].is_zero()), None)
    derived = derive_error_equation(scheme, truncation)
    report = TheoremReport(
        which,
        counterexample is None,
        vanishing,
        derived,
        expected,
        derived.order == len(asserted) + 1 and derived.leading_coefficient == expected,
        counterexample,
    )
    if which == 2:
        report.identification = dict(THEOREM2_IDENTIFICATION)
        free_a, _ = _next_error_series(generic_fourth_order(sym("a")), truncation, "jet")
        report.a_solutions = vanishing_set(free_a[2], "a")
    return report


# --- printing ---------------------------------------------------------------------

def format_error_equation(eq: Union[ErrorEquation, CoeffPoly], order: Optional[int] = None) -> str:
    """``e_{n+1} = (1/2)[c3 + 4 c2^2 - 4 c2^2 A''(1)] e^3 + O(e^4)``."""
    if isinstance(eq, ErrorEquation):
        coefficient, order = eq.leading_coefficient, eq.order
    else:
        coefficient = eq
    content = coefficient.content()
    if coefficient.sorted_terms() and coefficient.sorted_terms()[0][1] < 0 and len(coefficient.terms) == 1:
        content = -content
    inner = (coefficient / content).to_string(pretty=True)
    if content == 1:
        body = inner if len(coefficient.terms) == 1 else f"[{inner}]"
    elif len(coefficient.terms) == 1:
        body = f"({content}) {inner}"
    else:
        body = f"({content})[{inner}]"
    return f"e_{{n+1}} = {body} e^{order} + O(e^{order + 1})"
