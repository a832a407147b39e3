"""Arbitrary-precision arithmetic contexts, decimal text I/O and exact rationals.

Reals are ``mpf`` values created by a private :class:`mpmath.MPContext`, so every
value knows its own context (``x.context``) and nothing touches mpmath's global
``mp`` state.  Exact constants are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import mpmath

__all__ = [
    "ConfigurationError",
    "ParseError",
    "PrecisionContext",
    "Rational",
    "Real",
    "format_error",
    "format_real",
    "make_context",
    "parse_rational",
    "parse_real",
]

Real = mpmath.mpf
Rational = Fraction

MIN_DIGITS = 16
DEFAULT_DIGITS = 200
GUARD_DIGITS = 10

_DECIMAL_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


class ConfigurationError(ValueError):
    """Invalid precision or solver configuration."""


class ParseError(ValueError):
    """Malformed numeric text."""


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in significant decimal digits.

    Arithmetic runs with ``GUARD_DIGITS`` extra digits so that reported
    mantissas are not disturbed by rounding in the last places.
    """

    decimal_digits: int = DEFAULT_DIGITS
    mp: mpmath.ctx_mp.MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.decimal_digits, int) or self.decimal_digits < MIN_DIGITS:
            raise ConfigurationError(
                f"decimal_digits must be an integer >= {MIN_DIGITS}, got {self.decimal_digits!r}"
            )
        ctx = mpmath.MPContext()
        ctx.dps = self.decimal_digits + GUARD_DIGITS
        object.__setattr__(self, "mp", ctx)

    @property
    def pi(self) -> Real:
        return self.mp.pi

    def real(self, value) -> Real:
        """Convert an int, Fraction, Real or decimal string into this context."""
        if isinstance(value, str):
            return parse_real(self, value)
        if isinstance(value, Fraction):
            return self.mp.mpf(value.numerator) / value.denominator
        return self.mp.mpf(value)

    def ulp(self, x: Real) -> Real:
        """Spacing of the working precision at ``x``."""
        if x == 0:
            return self.mp.mpf(2) ** (-self.mp.prec)
        return self.mp.mpf(2) ** (self.mp.mag(x) - self.mp.prec)


def make_context(decimal_digits: int = DEFAULT_DIGITS) -> PrecisionContext:
    return PrecisionContext(decimal_digits)


def parse_real(ctx: PrecisionContext, text: str) -> Real:
    """Parse a signed decimal string (optionally with exponent) at working precision."""
    s = text.strip()
    if not _DECIMAL_RE.match(s):
        raise ParseError(f"not a decimal number: {text!r}")
    return ctx.mp.mpf(s)


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Exact rational from ``"p/q"``, a decimal string, an int or a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def format_real(x: Real, digits: int | None = None) -> str:
    """Decimal text of ``x``; by default with the context's full digit count."""
    ctx = x.context
    if digits is None:
        digits = ctx.dps
    return ctx.nstr(x, digits, strip_zeros=False)


def format_error(x: Real, mantissa_digits: int = 5) -> str:
    """Render ``|x|`` as ``0.ddddde-k`` (five-digit mantissa in [0.1, 1))."""
    ctx = getattr(x, "context", mpmath.mp)
    x = abs(ctx.mpf(x))
    if x == 0:
        return "0." + "0" * mantissa_digits + "e0"
    text = ctx.nstr(x, mantissa_digits, strip_zeros=False, min_fixed=1, max_fixed=0)
    mantissa, _, exponent = text.partition("e")
    digits = mantissa.replace(".", "")
    digits = (digits + "0" * mantissa_digits)[:mantissa_digits]
    return f"0.{digits}e{int(exponent or 0) + 1}"
