"""
Weight functions and their convergence conditions
=================================================

A weight is stored as an exact rational function of ``t`` together with its
value and first three derivatives at ``t = 1``.  The condition checkers look
only at that jet.
"""

from fractions import Fraction

from wfroot import catalog, check_fourth_order, check_third_order, evaluate_weight
from wfroot.weights import CATALOG_NAMES, WeightDomainError

# third-order weights need A(1) = 1 and A'(1) = -1/2
for name in ("weerakoon", "homeier", "chun"):
    A = catalog(name).A
    print(f"{name:10s} A(t) = {A.formula:12s} jet = {[str(v) for v in A.jet]}")
    print(f"           {check_third_order(A)}")

# the gamma family is third order for every gamma
print(check_third_order(catalog("gamma3", "7/3").A))

# fourth-order pairs; the last family only qualifies at gamma = 1
for gamma in (Fraction(0), Fraction(1, 2), Fraction(1)):
    s = catalog("m4", gamma)
    report = check_fourth_order(s.P, s.Q, s.a)
    print(f"m4 gamma={gamma}: passed={report.passed} failures={report.failures()}")

# poles are reported, never stepped over
try:
    evaluate_weight(catalog("homeier").A, Fraction(0))
except WeightDomainError as exc:
    print(exc)

print(", ".join(CATALOG_NAMES))
