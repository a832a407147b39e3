"""
Iterating and estimating the order
==================================

Three steps at 200 digits are enough to see the order of each method from
the ratio of consecutive logarithmic error reductions.
"""

from wfroot import SolverConfig, builtin_problem, catalog, estimate_coc, format_error, make_context, solve
from wfroot.solvers import efficiency_index

cfg = SolverConfig(max_iterations=3, precision=make_context(200))
p = builtin_problem("f1")

for name, gamma in [("newton", None), ("chun", None), ("gamma3", 0), ("m1", None), ("m4", 1)]:
    s = catalog(name, gamma)
    trace = solve(p, s, "5", cfg)
    coc = estimate_coc(trace)
    errors = "  ".join(format_error(e) for e in trace.errors)
    ei = efficiency_index(s.nominal_order, s.evaluations_per_iteration)
    print(f"{s.label:22s} {errors}   COC={float(coc.estimated_order):.3f}  EI={ei:.3f}")

# solver mode: stop on a residual tolerance instead of a step count
trace = solve(p, catalog("newton"), "5", SolverConfig(50, "1e-120", make_context(200)))
print(trace.terminated_by, len(trace.iterates), format_error(trace.last.residual))
