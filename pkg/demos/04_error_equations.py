"""
Deriving error equations exactly
================================

The oracle expands every quantity of a step as a power series in the error
``e`` with exact polynomial coefficients in ``c_h = f^(h)(alpha)/(h! f'(alpha))``
and the free weight-jet values.
"""

from fractions import Fraction

from wfroot import catalog, derive_error_equation, format_error_equation, verify_theorem
from wfroot.oracle import compare_with_published, symbolic_scheme, taylor_expansions, vanishing_set

# the ingredients of one step with a = 2/3
ex = taylor_expansions(a=Fraction(2, 3), N=5)
for key in ("u", "y_minus_root", "t"):
    print(key, [str(ex[key][k]) for k in range(4)])

# general conditions, proved symbolically
for which in (1, 2):
    print("\n".join(verify_theorem(which).lines()))

# particular members and how they compare with their published equations
for name in ("chun", "m1", "m2", "m3"):
    cmp = compare_with_published(name)
    print(f"{name}: {format_error_equation(cmp.derived)}")
    print(f"    {cmp.describe()}")

# the last fourth-order family keeps an e^3 term unless gamma = 1
eq = derive_error_equation(symbolic_scheme("m4"))
print(format_error_equation(eq), "vanishes at gamma =", [str(g) for g in vanishing_set(eq.leading_coefficient, "gamma")])
print(format_error_equation(derive_error_equation(catalog("m4", 1))))
