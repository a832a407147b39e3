"""Newton and weight-function two-step iterations, traces and order estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Union

import mpmath

from .numerics import ConfigurationError, PrecisionContext, Real, make_context
from .problems import EvaluationError, Problem, evaluate, reference_root, suggested_x0
from .weights import SchemeKind, SchemeSpec, WeightDomainError, evaluate_weight

__all__ = [
    "ConvergenceReport",
    "DerivativeSingularError",
    "IterationTrace",
    "SolverConfig",
    "Step",
    "StepResult",
    "efficiency_index",
    "estimate_coc",
    "newton_step",
    "scheme_step",
    "solve",
]


class DerivativeSingularError(ZeroDivisionError):
    def __init__(self, label: str, x):
        super().__init__(f"{label}: f'(x) = 0 at x={x}")
        self.x = x


def _newton_correction(p: Problem, x):
    fx, fpx = evaluate(p, x)
    if fpx == 0:
        raise DerivativeSingularError(p.label, x)
    return fx / fpx, fpx


def newton_step(p: Problem, x: Real) -> Real:
    u, _ = _newton_correction(p, x)
    return x - u


class StepResult(NamedTuple):
    x_next: Real
    y: Optional[Real]
    t: Optional[Real]


def scheme_step(p: Problem, s: SchemeSpec, x: Real) -> StepResult:
    """One iteration of ``s``: predictor ``y = x - a u``, ``t = f'(y)/f'(x)``, corrector."""
    u, fpx = _newton_correction(p, x)
    if s.kind is SchemeKind.NEWTON:
        return StepResult(x - u, None, None)
    y = x - s.a.numerator * u / s.a.denominator
    _, fpy = evaluate(p, y)
    t = fpy / fpx
    if s.kind is SchemeKind.THIRD_ORDER:
        return StepResult(x - evaluate_weight(s.A, t) * u, y, t)
    weight = evaluate_weight(s.P, t) * evaluate_weight(s.Q, t)
    return StepResult(x - weight * u, y, t)


@dataclass(frozen=True)
class SolverConfig:
    """``max_iterations`` caps the run; ``residual_tolerance`` stops it early."""

    max_iterations: int = 3
    residual_tolerance: Optional[Union[str, Real]] = None
    precision: PrecisionContext = field(default_factory=make_context)

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ConfigurationError("max_iterations must be >= 1")
        if self.residual_tolerance is not None:
            if self.precision.real(self.residual_tolerance) <= 0:
                raise ConfigurationError("residual_tolerance must be positive")


@dataclass(frozen=True)
class Step:
    n: int
    x: Real
    y: Optional[Real]
    t: Optional[Real]
    residual: Real
    error: Optional[Real] = None


@dataclass
class IterationTrace:
    scheme_label: str
    problem_label: str
    x0: Real
    root: Optional[Real] = None
    iterates: list[Step] = field(default_factory=list)
    terminated_by: str = "max_iterations"
    failure: Optional[str] = None

    @property
    def errors(self) -> list[Real]:
        return [s.error for s in self.iterates if s.error is not None]

    @property
    def last(self) -> Optional[Step]:
        return self.iterates[-1] if self.iterates else None


def solve(
    p: Problem,
    s: SchemeSpec,
    x0: Union[None, str, Real] = None,
    cfg: Optional[SolverConfig] = None,
) -> IterationTrace:
    """Iterate ``s`` from ``x0`` (default: the problem's suggested start).

    Step failures end the run with ``terminated_by='failure'``; the steps taken
    so far are kept.  A residual of exactly zero also ends the run.
    """
    cfg = cfg or SolverConfig()
    ctx = cfg.precision
    x = suggested_x0(p, ctx) if x0 is None else ctx.real(x0)
    tol = None if cfg.residual_tolerance is None else ctx.real(cfg.residual_tolerance)
    alpha = reference_root(p, ctx)
    trace = IterationTrace(s.label, p.label, x, alpha)
    for n in range(1, cfg.max_iterations + 1):
        try:
            x, y, t = scheme_step(p, s, x)
            fx, _ = evaluate(p, x)
        except (DerivativeSingularError, WeightDomainError, EvaluationError) as exc:
            trace.terminated_by = "failure"
            trace.failure = str(exc)
            break
        residual = abs(fx)
        error = abs(x - alpha) if alpha is not None else None
        trace.iterates.append(Step(n, x, y, t, residual, error))
        if residual == 0 or (tol is not None and residual <= tol):
            trace.terminated_by = "tolerance"
            break
    return trace


@dataclass(frozen=True)
class ConvergenceReport:
    estimated_order: Optional[Real] = None
    asymptotic_constant_estimate: Optional[Real] = None
    reason: Optional[str] = None

    @property
    def estimable(self) -> bool:
        return self.estimated_order is not None


def estimate_coc(trace: Union[IterationTrace, Sequence]) -> ConvergenceReport:
    """Computational order from the last three errors.

    ``m = ln(e[n+1]/e[n]) / ln(e[n]/e[n-1])`` and ``zeta = e[n+1]/e[n]^m``.
    Accepts a trace or a plain sequence of errors (Reals, floats or decimal strings).
    """
    errors = list(trace.errors if isinstance(trace, IterationTrace) else trace)
    if len(errors) < 3:
        return ConvergenceReport(reason=f"need 3 errors, have {len(errors)}")
    e0, e1, e2 = errors[-3:]
    m = getattr(e2, "context", None) or getattr(e0, "context", None) or mpmath.mp
    e0, e1, e2 = (abs(m.mpf(v)) for v in (e0, e1, e2))
    if e0 == 0 or e1 == 0 or e2 == 0:
        return ConvergenceReport(reason="an error is exactly zero (already converged)")
    denominator = m.log(e1 / e0)
    if denominator == 0:
        return ConvergenceReport(reason="consecutive errors are equal")
    order = m.log(e2 / e1) / denominator
    return ConvergenceReport(order, e2 / e1**order)


def efficiency_index(order, evaluations_per_iteration: int):
    """``order ** (1/evaluations)``."""
    if evaluations_per_iteration < 1:
        raise ValueError("evaluations_per_iteration must be >= 1")
    if isinstance(order, (int, float)):
        return math.pow(order, 1 / evaluations_per_iteration)
    return order ** (order.context.mpf(1) / evaluations_per_iteration)
