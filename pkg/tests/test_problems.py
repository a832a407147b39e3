import random
from fractions import Fraction

import mpmath
import pytest

from wfroot.numerics import format_real
from wfroot.problems import (
    BUILTIN_IDS,
    CatalogError,
    EvaluationError,
    ProblemDefinitionError,
    builtin_problem,
    evaluate,
    parse_problem_text,
    problem_from_expressions,
    reference_root,
)


def test_unknown_problem():
    with pytest.raises(CatalogError):
        builtin_problem("f9")


def test_f1_residual_at_printed_root(ctx200):
    p = builtin_problem("f1")
    assert abs(p.f(ctx200.real(p.root_text))) < ctx200.real("1e-19")


def test_f4_at_zero(ctx200):
    assert builtin_problem("f4").f(ctx200.real(0)) == -ctx200.real(1) / 10


def test_f2_at_two_and_a_half():
    # exact rational evaluation of (x^3 + 2.87 x^2 - 10.28)/4.62 - x at x = 5/2
    x = Fraction(5, 2)
    expected = (x**3 + Fraction(287, 100) * x**2 - Fraction(1028, 100)) / Fraction(462, 100) - x
    assert builtin_problem("f2").f(x) == expected
    # 15.625 + 17.9375 - 10.28 = 23.2825; 23.2825/4.62 - 2.5
    assert expected == Fraction(232825, 46200) - Fraction(5, 2)
    assert float(expected) == pytest.approx(2.5395021645021645, rel=1e-15)


def test_f3_reading_of_cos_sin(ctx200):
    # (x + cos x sin x)/pi - 1/4 vanishes at the printed root; the cos(x sin x) reading does not
    m = ctx200.mp
    r = ctx200.real(builtin_problem("f3").root_text)
    assert abs((r + m.cos(r) * m.sin(r)) / m.pi - m.mpf(1) / 4) < m.mpf("1e-18")
    assert abs((r + m.cos(r * m.sin(r))) / m.pi - m.mpf(1) / 4) > m.mpf("1e-3")


def test_f2_grouping(ctx200):
    # dividing the cubic by 4.62 before subtracting x is the grouping the root satisfies
    r = ctx200.real(builtin_problem("f2").root_text)
    other = (r**3 + ctx200.real("2.87") * r**2 - ctx200.real("10.28")) / (ctx200.real("4.62") - r)
    assert abs(builtin_problem("f2").f(r)) < ctx200.real("1e-18")
    assert abs(other) > 1


def test_evaluate_examples(ctx200):
    m = ctx200.mp
    f, fp = evaluate(builtin_problem("f1"), ctx200.real(5))
    assert f == m.exp(-5) - 1 + 1 and fp == -m.exp(-5) + m.mpf(1) / 5
    f, fp = evaluate(builtin_problem("f3"), ctx200.real(0))
    assert f == -m.mpf(1) / 4
    assert abs(fp - 2 / m.pi) < m.mpf(10) ** -205
    f, fp = evaluate(builtin_problem("f4"), ctx200.real(1))
    assert f == m.exp(-1) - m.mpf(1) / 10 and fp == 0


def test_evaluation_error_carries_x(ctx50):
    p = problem_from_expressions("recip", "1/x")
    with pytest.raises(EvaluationError) as info:
        evaluate(p, ctx50.real(0))
    assert info.value.x == 0


@pytest.mark.parametrize("pid", BUILTIN_IDS)
def test_derivative_matches_central_differences(pid):
    p = builtin_problem(pid)
    rng = random.Random(pid)
    x0 = float(p.x0_text)
    for _ in range(10):
        x = x0 + rng.uniform(-0.1, 0.1)
        h = 1e-5
        fd = (p.f(x + h) - p.f(x - h)) / (2 * h)
        assert fd == pytest.approx(p.fprime(x), rel=1e-6, abs=1e-10)


@pytest.mark.parametrize("pid", BUILTIN_IDS)
def test_refined_root_agrees_with_printed_digits(pid, ctx200):
    p = builtin_problem(pid)
    alpha = reference_root(p, ctx200)
    assert abs(p.f(alpha)) <= ctx200.real(10) ** (8 - 200)
    printed = p.root_text
    assert format_real(alpha, 60).startswith(printed[:-1])


def test_expression_problem_matches_builtin(ctx200):
    user = problem_from_expressions("g1", "exp(-x) - 1 + x/5", root="4.9651142317442763036", x0="5")
    builtin = builtin_problem("f1")
    for v in ("4.5", "5", "5.25"):
        x = ctx200.real(v)
        assert abs(user.f(x) - builtin.f(x)) < ctx200.real("1e-200")
        assert abs(user.fprime(x) - builtin.fprime(x)) < ctx200.real("1e-200")


def test_expression_decimals_are_exact(ctx200):
    p = problem_from_expressions("g2", "(x^3 + 2.87*x^2 - 10.28)/4.62 - x")
    x = ctx200.real("2.5")
    assert abs(p.f(x) - builtin_problem("f2").f(x)) < ctx200.real("1e-205")
    assert abs(p.fprime(x) - builtin_problem("f2").fprime(x)) < ctx200.real("1e-205")


@pytest.mark.parametrize("bad", ["x + y", "__import__('os')", "tan(x)", "x $ 2", "(x"])
def test_expression_grammar_rejects(bad):
    with pytest.raises(ProblemDefinitionError):
        problem_from_expressions("bad", bad)


def test_problem_file_format(ctx50):
    text = """
# two problems
label=cubic
f=x^3 - 2
root=1.2599210498948731648
x0=1

label = trig
f = cos(x) - x
fprime = -sin(x) - 1
x0 = 0.5
"""
    cubic, trig = parse_problem_text(text)
    assert cubic.label == "cubic" and trig.fprime_text == "-sin(x) - 1"
    alpha = reference_root(cubic, ctx50)
    assert abs(alpha**3 - 2) < ctx50.real("1e-45")
    assert float(trig.fprime(0.5)) == pytest.approx(-mpmath.sin(0.5) - 1)


def test_problem_file_rejects_unknown_key():
    with pytest.raises(ProblemDefinitionError):
        parse_problem_text("label=a\nf=x\ncolour=red\n")
