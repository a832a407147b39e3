"""
Working precision and the built-in problems
===========================================

Every computation runs inside a precision context.  The built-in problems
carry a short printed root that is polished to full working precision
before any error is measured.
"""

from wfroot import builtin_problem, evaluate, format_error, format_real, make_context
from wfroot.problems import BUILTIN_IDS, reference_root

# 200 significant digits (plus guard digits used internally)
ctx = make_context(200)
print(ctx.pi)

# decimal text goes in exactly, errors come out in the compact table style
x = ctx.real("0.21464e-4")
print(format_error(x))

# each problem bundles f, f', a printed root and a starting point
for pid in BUILTIN_IDS:
    p = builtin_problem(pid)
    alpha = reference_root(p, ctx)
    f, fp = evaluate(p, alpha)
    print(f"{pid}: {p.f_text}")
    print(f"    root  {format_real(alpha, 40)}")
    print(f"    |f|   {format_error(f)}   f' = {format_real(fp, 8)}")
