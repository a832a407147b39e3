"""Exact symbolic derivation of convergence orders and error equations."""

from .derive import (
    PUBLISHED,
    Comparison,
    ErrorEquation,
    InconclusiveOrderError,
    SymbolicScheme,
    SymbolicWeight,
    TheoremReport,
    compare_with_published,
    derive_error_equation,
    format_error_equation,
    from_spec,
    generic_fourth_order,
    generic_third_order,
    rational_weight_series,
    symbolic_scheme,
    taylor_expansions,
    vanishing_set,
    verify_theorem,
)
from .poly import CoeffPoly, const, rational_roots, sym
from .series import (
    ESeries,
    NonUnitConstantError,
    NonzeroConstantTermError,
    SeriesOrderMismatchError,
    compose_into_polynomial,
    expand_weight,
    series_mul,
    series_reciprocal,
)
