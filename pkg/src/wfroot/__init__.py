"""Weight-function third- and fourth-order root finders with a symbolic order oracle."""

from .numerics import (
    ConfigurationError,
    ParseError,
    PrecisionContext,
    format_error,
    format_real,
    make_context,
    parse_rational,
    parse_real,
)
from .bench import emit, run_benchmark, run_table
from .oracle import derive_error_equation, format_error_equation, verify_theorem
from .problems import Problem, builtin_problem, evaluate, problem_from_expressions, reference_root
from .solvers import (
    IterationTrace,
    SolverConfig,
    efficiency_index,
    estimate_coc,
    newton_step,
    scheme_step,
    solve,
)
from .weights import (
    CATALOG_NAMES,
    SchemeSpec,
    WeightDomainError,
    WeightJet,
    catalog,
    check_fourth_order,
    check_third_order,
    evaluate_weight,
)

__version__ = "0.1.0"
