"""Truncated power series in the error ``e`` with :class:`CoeffPoly` coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Union

from .poly import CoeffPoly, const

__all__ = [
    "ESeries",
    "NonUnitConstantError",
    "SeriesOrderMismatchError",
    "compose_into_polynomial",
    "expand_weight",
    "series_mul",
    "series_reciprocal",
]


class SeriesOrderMismatchError(ValueError):
    pass


class NonUnitConstantError(ValueError):
    pass


class NonzeroConstantTermError(ValueError):
    pass


def _poly(x) -> CoeffPoly:
    return x if isinstance(x, CoeffPoly) else const(x)


class ESeries:
    """``sum(coeffs[k] e^k for k <= N)``, i.e. a value known modulo ``e^(N+1)``."""

    __slots__ = ("N", "coeffs")

    def __init__(self, coeffs: Sequence, N: int):
        if N < 0:
            raise ValueError("truncation order must be non-negative")
        cs = [_poly(c) for c in list(coeffs)[: N + 1]]
        cs += [CoeffPoly()] * (N + 1 - len(cs))
        self.N = N
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, value, N: int) -> "ESeries":
        return cls([value], N)

    @classmethod
    def e(cls, N: int) -> "ESeries":
        return cls([0, 1], N)

    def __getitem__(self, k: int) -> CoeffPoly:
        return self.coeffs[k]

    def __len__(self):
        return self.N + 1

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` if every coefficient vanishes."""
        return next((k for k, c in enumerate(self.coeffs) if not c.is_zero()), None)

    def truncate(self, N: int) -> "ESeries":
        return ESeries(self.coeffs, min(N, self.N))

    def _check(self, other: "ESeries"):
        if other.N != self.N:
            raise SeriesOrderMismatchError(f"truncation orders differ: {self.N} vs {other.N}")

    def __add__(self, other):
        if not isinstance(other, ESeries):
            other = ESeries.constant(other, self.N)
        self._check(other)
        return ESeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.N)

    __radd__ = __add__

    def __neg__(self):
        return ESeries([-c for c in self.coeffs], self.N)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ESeries):
            return series_mul(self, other)
        return ESeries([c * other for c in self.coeffs], self.N)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ESeries):
            return NotImplemented
        return self.N == other.N and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def __repr__(self):
        terms = [f"({c})*e^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return f"ESeries({' + '.join(terms) or '0'} + O(e^{self.N + 1}))"


def series_mul(a: ESeries, b: ESeries) -> ESeries:
    """Cauchy product modulo ``e^(N+1)``."""
    a._check(b)
    N = a.N
    out = []
    for k in range(N + 1):
        acc = CoeffPoly()
        for i in range(k + 1):
            if a.coeffs[i] and b.coeffs[k - i]:
                acc = acc + a.coeffs[i] * b.coeffs[k - i]
        out.append(acc)
    return ESeries(out, N)


def series_reciprocal(a: ESeries) -> ESeries:
    """``1/a`` for a series with constant coefficient exactly 1."""
    if a.coeffs[0] != 1:
        raise NonUnitConstantError(f"constant coefficient must be 1, got {a.coeffs[0]}")
    out = [const(1)]
    for k in range(1, a.N + 1):
        acc = CoeffPoly()
        for j in range(1, k + 1):
            if a.coeffs[j]:
                acc = acc + a.coeffs[j] * out[k - j]
        out.append(-acc)
    return ESeries(out, a.N)


def compose_into_polynomial(poly_coeffs: Sequence, delta: ESeries) -> ESeries:
    """``sum(poly_coeffs[k] * delta^k)`` for a series ``delta`` without constant term."""
    if not delta.coeffs[0].is_zero():
        raise NonzeroConstantTermError("the inner series must have zero constant term")
    N = delta.N
    # powers of delta beyond N vanish modulo e^(N+1)
    usable = list(poly_coeffs)[: N + 1]
    result = ESeries.constant(0, N)
    for c in reversed(usable):
        result = series_mul(result, delta) + ESeries.constant(_poly(c), N)
    return result


def expand_weight(jet: Sequence, tau: ESeries) -> ESeries:
    """Taylor expansion of ``W`` about ``t = 1``: ``sum(jet[k]/k! * tau^k)``.

    ``jet`` lists ``W(1), W'(1), W''(1), ...`` (usually four values) and ``tau``
    is the series for ``t - 1``.
    """
    if not tau.coeffs[0].is_zero():
        raise NonzeroConstantTermError("tau = t - 1 must have zero constant term")
    scaled = [_poly(w) / Fraction(math.factorial(k)) for k, w in enumerate(jet)]
    return compose_into_polynomial(scaled, tau)
