"""
Bringing your own equation
==========================

Problems can be written as expressions over ``x`` with ``exp``, ``ln``,
``sin``, ``cos`` and ``pi``.  Without a derivative the expression is
differentiated symbolically.
"""

from wfroot import SolverConfig, catalog, estimate_coc, format_error, make_context, solve
from wfroot.bench import emit, run_benchmark
from wfroot.problems import parse_problem_text, problem_from_expressions

kepler = problem_from_expressions("kepler", "x - 0.3*sin(x) - 1", root="1.2880913132118376974", x0="1")
print(kepler.fprime_text)

trace = solve(kepler, catalog("m2"), None, SolverConfig(3, precision=make_context(300)))
for step in trace.iterates:
    print(step.n, format_error(step.error))
print("COC", float(estimate_coc(trace).estimated_order))

# several problems in the plain key=value format
text = """
# cubic from the classic textbook example
label = cubic
f = x^3 - 2*x - 5
root = 2.0945514815423265915
x0 = 2

label = wave
f = cos(x) - x
fprime = -sin(x) - 1
root = 0.73908513321516064166
x0 = 1
"""
for p in parse_problem_text(text):
    print(emit(run_benchmark(p, ["newton", "chun", "m1", "m3"]), "md"))
