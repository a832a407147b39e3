import sympy as sp
import pytest

from wfroot import make_context
from wfroot.oracle import CoeffPoly

E = sp.Symbol("e")
C = {h: sp.Symbol(f"c{h}") for h in range(2, 8)}


@pytest.fixture(scope="session")
def ctx200():
    return make_context(200)


@pytest.fixture(scope="session")
def ctx50():
    return make_context(50)


def to_sympy(poly: CoeffPoly) -> sp.Expr:
    out = sp.Integer(0)
    for mono, c in poly.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for name, k in mono:
            term *= sp.Symbol(name) ** k
        out += term
    return sp.expand(out)


def _trunc(x, N):
    poly = sp.Poly(sp.expand(x), E)
    return sum((c * E**k for (k,), c in poly.terms() if k <= N), sp.Integer(0))


def _recip(x, N):
    # geometric series of 1/(c0 (1 + z)) with z = x/c0 - 1 free of e^0
    c0 = sp.expand(x).subs(E, 0)
    z = _trunc(x / c0 - 1, N)
    out, power = sp.Integer(1), sp.Integer(1)
    for _ in range(N):
        power = _trunc(-power * z, N)
        out += power
    return sp.expand(out / c0)


def sympy_taylor(a, N=5):
    """Independent expansions in plain sympy (the oracle for the series kernel)."""
    c = [0, 1] + [C[h] for h in range(2, N + 2)]

    def f(z):
        return sum(c[k] * z**k for k in range(1, N + 1))

    def fp(z):
        return sum(k * c[k] * z ** (k - 1) for k in range(1, N + 2))

    def horner(coeffs, z):
        acc = sp.Integer(0)
        for k in reversed(coeffs):
            acc = _trunc(acc * z + k, N)
        return acc

    fx, fpx = _trunc(f(E), N), _trunc(fp(E), N)
    u = _trunc(fx * _recip(fpx, N), N)
    delta = _trunc(E - a * u, N)
    fpy = horner([k * c[k] for k in range(1, N + 2)], delta)
    t = _trunc(fpy * _recip(fpx, N), N)
    return {"u": u, "y_minus_root": delta, "fprime_y": fpy, "t": t, "fprime_x": fpx, "f": fx}


def sympy_next_error(a, weight, N=5):
    """e_{n+1} = e - W(t) u with W a sympy function of t (a ratio of polynomials)."""
    ex = sympy_taylor(a, N)
    s_ = sp.Symbol("s_")
    num, den = sp.fraction(sp.together(weight(1 + s_)))
    tau = _trunc(ex["t"] - 1, N)

    def at_tau(poly):
        acc = sp.Integer(0)
        for k in sp.Poly(poly, s_).all_coeffs():
            acc = _trunc(acc * tau + k, N)
        return acc

    w = _trunc(at_tau(num) * _recip(at_tau(den), N), N)
    return _trunc(E - w * ex["u"], N)


# (criterion number, title, passed, detail), filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})")
