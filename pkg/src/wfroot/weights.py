"""Weight functions of ``t = f'(y)/f'(x)`` and the catalog of iteration schemes.

Every catalog weight is a rational function of ``t`` with exact coefficients.
Its value, first three derivatives at ``t = 1`` (the *jet*) are stored next to
it, transcribed by hand; the test-suite differentiates the rational form to
guard the transcription.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .numerics import ParseError, parse_rational

__all__ = [
    "CATALOG_NAMES",
    "ConditionReport",
    "SchemeKind",
    "SchemeSpec",
    "UnknownSchemeError",
    "WeightDomainError",
    "WeightJet",
    "catalog",
    "check_fourth_order",
    "check_third_order",
    "evaluate_weight",
]

ONE = Fraction(1)
HALF = Fraction(1, 2)
TWO_THIRDS = Fraction(2, 3)


class WeightDomainError(ArithmeticError):
    """The weight was evaluated at one of its poles."""

    def __init__(self, formula: str, pole):
        super().__init__(f"weight {formula} has a pole at t={pole}")
        self.formula = formula
        self.pole = pole


class UnknownSchemeError(KeyError):
    pass


def _horner(coeffs: Sequence[Fraction], t):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class WeightJet:
    """``W(t) = num(t)/den(t)`` together with ``(W(1), W'(1), W''(1), W'''(1))``.

    Coefficients are listed by increasing power of ``t``.
    """

    formula: str
    numerator: tuple[Fraction, ...]
    denominator: tuple[Fraction, ...]
    jet: tuple[Fraction, Fraction, Fraction, Fraction]
    poles: tuple[Fraction, ...] = ()

    @property
    def w0(self):
        return self.jet[0]

    @property
    def w1(self):
        return self.jet[1]

    @property
    def w2(self):
        return self.jet[2]

    @property
    def w3(self):
        return self.jet[3]

    def evaluator(self, t):
        return evaluate_weight(self, t)

    __call__ = evaluator


def _jet(formula, num, den=(1,), jet=(), poles=()) -> WeightJet:
    return WeightJet(
        formula,
        tuple(Fraction(c) for c in num),
        tuple(Fraction(c) for c in den),
        tuple(Fraction(c) for c in jet),
        tuple(Fraction(p) for p in poles),
    )


def _in_context(coeffs, t):
    # mpmath rounds Fraction operands toward zero; mpf(p)/q rounds to nearest
    ctx = getattr(t, "context", None)
    if ctx is None:
        return coeffs
    return [ctx.mpf(c.numerator) / c.denominator for c in coeffs]


def evaluate_weight(w: WeightJet, t):
    """Evaluate ``W(t)``; works for Fractions, floats and Reals alike."""
    den = _horner(_in_context(w.denominator, t), t)
    if den == 0:
        pole = next((p for p in w.poles if p == t), t)
        raise WeightDomainError(w.formula, pole)
    num = _horner(_in_context(w.numerator, t), t)
    if len(w.denominator) == 1 and w.denominator[0] == 1:
        return num
    return num / den


class SchemeKind(str, enum.Enum):
    NEWTON = "newton"
    THIRD_ORDER = "third"
    FOURTH_ORDER = "fourth"


@dataclass(frozen=True)
class SchemeSpec:
    """Newton, ``x - A(t) u`` (third order) or ``x - P(t) Q(t) u`` (fourth order).

    ``u = f(x)/f'(x)`` and the predictor is ``y = x - a u``.
    """

    name: str
    kind: SchemeKind
    label: str
    a: Fraction = ONE
    A: Optional[WeightJet] = None
    P: Optional[WeightJet] = None
    Q: Optional[WeightJet] = None
    gamma: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind is SchemeKind.THIRD_ORDER and (self.A is None or self.a != 1):
            raise ValueError("third-order schemes need a weight A and a = 1")
        if self.kind is SchemeKind.FOURTH_ORDER and (self.P is None or self.Q is None):
            raise ValueError("fourth-order schemes need weights P and Q")

    @property
    def nominal_order(self) -> int:
        return {SchemeKind.NEWTON: 2, SchemeKind.THIRD_ORDER: 3, SchemeKind.FOURTH_ORDER: 4}[
            self.kind
        ]

    @property
    def evaluations_per_iteration(self) -> int:
        # Newton: f, f'. Two-step schemes: f(x), f'(x), f'(y).
        return 2 if self.kind is SchemeKind.NEWTON else 3

    def weights(self) -> dict[str, WeightJet]:
        return {k: w for k, w in (("A", self.A), ("P", self.P), ("Q", self.Q)) if w is not None}


@dataclass
class ConditionReport:
    """Outcome of checking a weight jet against the convergence conditions."""

    checks: dict[str, bool] = field(default_factory=dict)
    recorded: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def __str__(self):
        parts = [f"{name}: {'ok' if ok else 'FAIL'}" for name, ok in self.checks.items()]
        parts += [f"{name}={value}" for name, value in self.recorded.items()]
        return "; ".join(parts)


def _close(value, target, digits: int) -> bool:
    if isinstance(value, (int, Fraction)):
        return Fraction(value) == target
    if isinstance(value, float):
        tol = 10.0 ** (10 - digits)
    else:
        tol = value.context.mpf(10) ** (10 - digits)
    return abs(value - target) <= tol


def check_third_order(A: WeightJet, digits: int = 200) -> ConditionReport:
    """A(1) = 1 and A'(1) = -1/2; A''(1) is free and enters the error constant."""
    report = ConditionReport()
    report.checks["A(1)=1"] = _close(A.w0, ONE, digits)
    report.checks["A'(1)=-1/2"] = _close(A.w1, -HALF, digits)
    report.recorded["A''(1)"] = A.w2
    return report


def check_fourth_order(P: WeightJet, Q: WeightJet, a, digits: int = 200) -> ConditionReport:
    """a = 2/3, P(1) = 1, P'(1) = -1/2, Q(1) = 1, Q'(1) = -1/4, Q''(1) = 2 - P''(1)."""
    report = ConditionReport()
    report.checks["a=2/3"] = _close(a, TWO_THIRDS, digits)
    report.checks["P(1)=1"] = _close(P.w0, ONE, digits)
    report.checks["P'(1)=-1/2"] = _close(P.w1, -HALF, digits)
    report.checks["Q(1)=1"] = _close(Q.w0, ONE, digits)
    report.checks["Q'(1)=-1/4"] = _close(Q.w1, Fraction(-1, 4), digits)
    report.checks["Q''(1)=2-P''(1)"] = _close(Q.w2, 2 - P.w2, digits)
    report.recorded["P''(1)"] = P.w2
    report.recorded["P'''(1)"] = P.w3
    report.recorded["Q'''(1)"] = Q.w3
    return report


# --- catalog -----------------------------------------------------------------

WEERAKOON_A = _jet("2/(1+t)", [2], [1, 1], [1, Fraction(-1, 2), Fraction(1, 2), Fraction(-3, 4)], [-1])
HOMEIER_A = _jet("(1+t)/(2t)", [1, 1], [0, 2], [1, Fraction(-1, 2), 1, -3], [0])
CHUN_A = _jet("(3-t)/2", [Fraction(3, 2), Fraction(-1, 2)], jet=[1, Fraction(-1, 2), 0, 0])
NEWTON_A = _jet("1", [1], jet=[1, 0, 0, 0])


def gamma3_weight(gamma: Fraction) -> WeightJet:
    """(3-t)/2 + gamma (t-1)^2."""
    g = Fraction(gamma)
    return _jet(
        f"(3-t)/2+({g})(t-1)^2",
        [Fraction(3, 2) + g, Fraction(-1, 2) - 2 * g, g],
        jet=[1, Fraction(-1, 2), 2 * g, 0],
    )


M1_Q = _jet("2-(7/4)t+(3/4)t^2", [2, Fraction(-7, 4), Fraction(3, 4)], jet=[1, Fraction(-1, 4), Fraction(3, 2), 0])
M2_Q = _jet("7/4-(5/4)t+(1/2)t^2", [Fraction(7, 4), Fraction(-5, 4), Fraction(1, 2)], jet=[1, Fraction(-1, 4), 1, 0])
M3_Q = _jet("9/4-(9/4)t+t^2", [Fraction(9, 4), Fraction(-9, 4), 1], jet=[1, Fraction(-1, 4), 2, 0])
M4_P = _jet("3/2-t/2+(t-1)^2", [Fraction(5, 2), Fraction(-5, 2), 1], jet=[1, Fraction(-1, 2), 2, 0])


def m4_q_weight(gamma: Fraction) -> WeightJet:
    """(9/4 - gamma) + (2 gamma - 9/4) t + (1 - gamma) t^2."""
    g = Fraction(gamma)
    return _jet(
        f"(9/4-{g})+(2*{g}-9/4)t+(1-{g})t^2",
        [Fraction(9, 4) - g, 2 * g - Fraction(9, 4), 1 - g],
        jet=[1, Fraction(-1, 4), 2 * (1 - g), 0],
    )


CATALOG_NAMES = ("newton", "weerakoon", "homeier", "chun", "gamma3", "m1", "m2", "m3", "m4")
_NEEDS_GAMMA = {"gamma3", "m4"}


def catalog(name: str, gamma: Union[None, str, int, Fraction] = None) -> SchemeSpec:
    """Look up a scheme by name; ``gamma3`` and ``m4`` need ``gamma``."""
    if name not in CATALOG_NAMES:
        raise UnknownSchemeError(f"unknown method {name!r}; expected one of {', '.join(CATALOG_NAMES)}")
    if name in _NEEDS_GAMMA:
        if gamma is None:
            raise ValueError(f"method {name!r} needs a value for gamma")
        try:
            gamma = parse_rational(gamma)
        except ParseError as exc:
            raise ValueError(str(exc)) from None
    else:
        gamma = None

    third = SchemeKind.THIRD_ORDER
    fourth = SchemeKind.FOURTH_ORDER
    if name == "newton":
        return SchemeSpec(name, SchemeKind.NEWTON, "Newton")
    if name == "weerakoon":
        return SchemeSpec(name, third, "Weerakoon", A=WEERAKOON_A)
    if name == "homeier":
        return SchemeSpec(name, third, "Homeier", A=HOMEIER_A)
    if name == "chun":
        return SchemeSpec(name, third, "Chun", A=CHUN_A)
    if name == "gamma3":
        return SchemeSpec(name, third, f"gamma3(gamma={gamma})", A=gamma3_weight(gamma), gamma=gamma)
    if name == "m1":
        return SchemeSpec(name, fourth, "Method 1", TWO_THIRDS, P=WEERAKOON_A, Q=M1_Q)
    if name == "m2":
        return SchemeSpec(name, fourth, "Method 2", TWO_THIRDS, P=HOMEIER_A, Q=M2_Q)
    if name == "m3":
        return SchemeSpec(name, fourth, "Method 3", TWO_THIRDS, P=CHUN_A, Q=M3_Q)
    return SchemeSpec(
        name, fourth, f"Method 4(gamma={gamma})", TWO_THIRDS, P=M4_P, Q=m4_q_weight(gamma), gamma=gamma
    )


def third_order_scheme(A: WeightJet, label: str = "custom") -> SchemeSpec:
    """A third-order scheme with an arbitrary weight (``A = 1`` gives Newton's iterates)."""
    return SchemeSpec(label, SchemeKind.THIRD_ORDER, label, A=A)
