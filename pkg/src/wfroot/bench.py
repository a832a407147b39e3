"""Reproduce the published error tables and render them as Markdown or CSV."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .numerics import format_error, make_context
from .problems import Problem, builtin_problem
from .solvers import SolverConfig, solve
from .weights import SchemeSpec, catalog

__all__ = [
    "BenchmarkRun",
    "OMITTED_NOTE",
    "REFERENCE_TABLES",
    "ReferenceTable",
    "compare_cell",
    "emit",
    "run_benchmark",
    "run_table",
]

TABLE_METHODS = ("newton", "weerakoon", "homeier", "chun", "m1")


@dataclass(frozen=True)
class ReferenceTable:
    number: int
    problem_id: str
    x0: str
    rows: dict[str, tuple[str, str, str]]


# |x_n - alpha| for n = 1, 2, 3 at 200 digits, as published
REFERENCE_TABLES = {
    2: ReferenceTable(2, "f1", "5", {
        "newton": ("0.21464e-4", "0.83264e-11", "0.12530e-23"),
        "weerakoon": ("0.11208e-6", "0.37810e-23", "0.14517e-72"),
        "homeier": ("0.12544e-6", "0.59456e-23", "0.63310e-72"),
        "chun": ("0.98734e-7", "0.22705e-23", "0.27611e-73"),
        "m1": ("0.42743e-9", "0.99425e-41", "0.29108e-167"),
    }),
    3: ReferenceTable(3, "f2", "2.5", {
        "newton": ("0.85925e-1", "0.32675e-2", "0.50032e-5"),
        "weerakoon": ("0.18271e-1", "0.14770e-5", "0.79610e-18"),
        "homeier": ("0.49772e-2", "0.33027e-8", "0.95318e-27"),
        "chun": ("0.27815e-1", "0.95903e-5", "0.41254e-15"),
        "m1": ("0.76770e-2", "0.12105e-8", "0.76261e-36"),
    }),
    4: ReferenceTable(4, "f3", "0.4", {
        "newton": ("0.10737e-3", "0.50901e-8", "0.11442e-16"),
        "weerakoon": ("0.20631e-6", "0.53436e-21", "0.92858e-65"),
        "homeier": ("0.52795e-6", "0.19743e-19", "0.10325e-59"),
        "chun": ("0.93064e-6", "0.20624e-18", "0.22446e-56"),
        "m1": ("0.24363e-7", "0.14724e-30", "0.19642e-123"),
    }),
    5: ReferenceTable(5, "f4", "0.3", {
        "newton": ("0.47567e-1", "0.22849e-2", "0.55356e-5"),
        "weerakoon": ("0.13039e-1", "0.31800e-5", "0.45048e-16"),
        "homeier": ("0.64393e-3", "0.72236e-10", "0.10226e-30"),
        "chun": ("0.34012e-1", "0.11125e-3", "0.34855e-11"),
        "m1": ("0.11886e-1", "0.73037e-7", "0.10950e-27"),
    }),
}

OMITTED_NOTE = (
    "Rows for the Soleymani et al. and Khattri comparator methods are omitted: "
    "their iteration formulas are not available to this package."
)


def _split(cell: str) -> Optional[tuple[str, int]]:
    if not cell.startswith("0.") or "e" not in cell:
        return None
    mantissa, _, exponent = cell[2:].partition("e")
    return mantissa, int(exponent)


def compare_cell(got: str, expected: str) -> str:
    """``match`` (identical), ``flag`` (same exponent and first three digits) or ``mismatch``."""
    if got == expected:
        return "match"
    a, b = _split(got), _split(expected)
    if a and b and a[1] == b[1] and a[0][:3] == b[0][:3]:
        return "flag"
    return "mismatch"


@dataclass
class BenchmarkRun:
    problem_id: str
    methods: list[str]
    x0: str
    iterations: int
    digits: int
    results: list[list[str]] = field(default_factory=list)
    table: Optional[int] = None
    status: list[list[Optional[str]]] = field(default_factory=list)

    @property
    def flagged(self) -> list[tuple[str, int, str]]:
        """Cells that differ from the reference: ``(method, n, status)``."""
        out = []
        for method, row in zip(self.methods, self.status):
            for n, s in enumerate(row, 1):
                if s not in (None, "match"):
                    out.append((method, n, s))
        return out


def _scheme(m: Union[str, SchemeSpec], gamma) -> SchemeSpec:
    if isinstance(m, SchemeSpec):
        return m
    return catalog(m, gamma if m in ("gamma3", "m4") else None)


def run_benchmark(
    problem: Union[str, Problem],
    methods: Sequence[Union[str, SchemeSpec]],
    x0: Optional[str] = None,
    iterations: int = 3,
    digits: int = 200,
    gamma=None,
    reference: Optional[ReferenceTable] = None,
) -> BenchmarkRun:
    """One fresh solve per method; failures become ``FAIL(reason)`` cells."""
    p = builtin_problem(problem) if isinstance(problem, str) else problem
    ctx = make_context(digits)
    cfg = SolverConfig(max_iterations=iterations, precision=ctx)
    start = x0 if x0 is not None else p.x0_text
    run = BenchmarkRun(p.label, [], str(start), iterations, digits,
                       table=reference.number if reference else None)
    for m in methods:
        s = _scheme(m, gamma)
        name = s.name
        trace = solve(p, s, start, cfg)
        row = []
        for step in trace.iterates:
            row.append("n/a" if step.error is None else format_error(step.error))
        if len(row) < iterations:
            if trace.terminated_by == "tolerance" and row:
                # f(x) = 0 exactly, so u = 0 and every later step returns the same iterate
                row += [row[-1]] * (iterations - len(row))
            else:
                row += [f"FAIL({trace.failure or 'stopped early'})"] * (iterations - len(row))
        run.methods.append(name)
        run.results.append(row)
        expected = reference.rows.get(name) if reference else None
        if expected:
            run.status.append([compare_cell(c, e) for c, e in zip(row, expected)] + [None] * (iterations - len(expected)))
        else:
            run.status.append([None] * iterations)
    return run


def run_table(number: int, methods: Sequence[str] = TABLE_METHODS, digits: int = 200) -> BenchmarkRun:
    try:
        ref = REFERENCE_TABLES[number]
    except KeyError:
        raise ValueError(f"no table {number}; expected one of {sorted(REFERENCE_TABLES)}") from None
    return run_benchmark(ref.problem_id, methods, ref.x0, 3, digits, reference=ref)


def reference_for(problem_id: str) -> Optional[ReferenceTable]:
    return next((t for t in REFERENCE_TABLES.values() if t.problem_id == problem_id), None)


_LABELS = {
    "newton": "Newton", "weerakoon": "Weerakoon", "homeier": "Homeier",
    "chun": "Chun", "m1": "Method 1", "m2": "Method 2", "m3": "Method 3",
    "gamma3": "gamma3", "m4": "Method 4",
}


def emit(run: BenchmarkRun, fmt: str = "markdown") -> str:
    """Render a run as ``markdown`` (``md``) or ``csv``; output is plain ASCII."""
    header = ["method"] + [f"e{n}" for n in range(1, run.iterations + 1)]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for m, row in zip(run.methods, run.results):
            writer.writerow([m] + row)
        return buf.getvalue()
    if fmt not in ("markdown", "md"):
        raise ValueError(f"unknown format {fmt!r}")
    title = f"Table {run.table}: " if run.table else ""
    lines = [
        f"{title}|x_n - alpha| for {run.problem_id}, x0 = {run.x0}, {run.digits} digits",
        "",
        "| Method | " + " | ".join(f"\\|x{n} - alpha\\|" for n in range(1, run.iterations + 1)) + " |",
        "|" + "---|" * (run.iterations + 1),
    ]
    for m, row, status in zip(run.methods, run.results, run.status):
        cells = [c + ("*" if s not in (None, "match") else "") for c, s in zip(row, status)]
        lines.append(f"| {_LABELS.get(m, m)} | " + " | ".join(cells) + " |")
    lines.append("")
    if run.flagged:
        lines.append("* differs from the published value in the 4th or 5th mantissa digit"
                     if all(s == "flag" for _, _, s in run.flagged)
                     else "* differs from the published value")
    if run.table is not None:
        lines.append(OMITTED_NOTE)
    return "\n".join(lines) + "\n"
