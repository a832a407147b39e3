import csv
import io

import pytest

from wfroot.bench import (
    OMITTED_NOTE,
    REFERENCE_TABLES,
    compare_cell,
    emit,
    run_benchmark,
    run_table,
)
from wfroot.numerics import make_context, parse_real
from wfroot.problems import problem_from_expressions


def test_compare_cell_policy():
    assert compare_cell("0.72236e-10", "0.72236e-10") == "match"
    assert compare_cell("0.72263e-10", "0.72236e-10") == "flag"
    assert compare_cell("0.72963e-10", "0.72236e-10") == "mismatch"
    assert compare_cell("0.72236e-11", "0.72236e-10") == "mismatch"
    assert compare_cell("FAIL(x)", "0.72236e-10") == "mismatch"


def test_single_row_runs():
    run = run_benchmark("f2", ["m1"], "2.5")
    assert run.results == [["0.76770e-2", "0.12105e-8", "0.76261e-36"]]
    run = run_benchmark("f4", ["homeier"], "0.3", reference=REFERENCE_TABLES[5])
    assert run.results[0][0] == "0.64393e-3" and run.results[0][2] == "0.10226e-30"
    assert run.flagged == [("homeier", 2, "flag")]


def test_table_two():
    run = run_table(2)
    assert run.methods == ["newton", "weerakoon", "homeier", "chun", "m1"]
    for method, row in zip(run.methods, run.results):
        assert tuple(row) == REFERENCE_TABLES[2].rows[method]
    assert run.flagged == []
    text = emit(run, "md")
    assert text.startswith("Table 2: |x_n - alpha| for f1, x0 = 5, 200 digits")
    assert "| Method 1 | 0.42743e-9 | 0.99425e-41 | 0.29108e-167 |" in text
    assert OMITTED_NOTE in text and "*" not in text


def test_table_five_marks_flag():
    text = emit(run_table(5), "markdown")
    assert "| Homeier | 0.64393e-3 | 0.72263e-10* | 0.10226e-30 |" in text
    assert "4th or 5th mantissa digit" in text


def test_unknown_table():
    with pytest.raises(ValueError):
        run_table(9)


def test_cells_parse_back():
    run = run_benchmark("f3", ["newton", "m1"], "0.4")
    ctx = make_context(50)
    for row in run.results:
        assert len(row) == run.iterations
        for cell in row:
            assert parse_real(ctx, cell) >= 0


def test_emit_empty_method_list():
    run = run_benchmark("f1", [])
    assert emit(run, "csv") == "method,e1,e2,e3\n"
    md = emit(run, "md").splitlines()
    assert OMITTED_NOTE not in md
    assert md[2] == "| Method | \\|x1 - alpha\\| | \\|x2 - alpha\\| | \\|x3 - alpha\\| |"
    assert not any(line.startswith("| ") for line in md[4:])


def test_emit_single_cell_csv():
    run = run_benchmark("f1", ["m1"], iterations=1)
    text = emit(run, "csv")
    assert text.splitlines() == ["method,e1", "m1,0.42743e-9"]
    assert list(csv.reader(io.StringIO(text)))[1] == ["m1", "0.42743e-9"]


def test_emit_is_ascii_and_deterministic():
    a = emit(run_table(3), "md")
    b = emit(run_table(3), "md")
    assert a == b
    a.encode("ascii")
    assert emit(run_table(3), "csv") == emit(run_table(3), "csv")


def test_emit_rejects_format():
    with pytest.raises(ValueError):
        emit(run_benchmark("f1", []), "html")


def test_failures_become_cells():
    p = problem_from_expressions("pole", "x^2 + 4")
    run = run_benchmark(p, ["homeier", "newton"], "2")
    assert run.results[0] == ["FAIL(weight (1+t)/(2t) has a pole at t=0)"] * 3
    # Newton reaches x = 0 where f' vanishes; no root is known, so errors are n/a
    assert run.results[1][0] == "n/a"
    assert run.results[1][1].startswith("FAIL(pole: f'(x) = 0")


def test_exact_root_cells():
    p = problem_from_expressions("identity", "x", root="0")
    run = run_benchmark(p, ["newton"], "7")
    # the iterate sits on the root, so the remaining steps reproduce it
    assert run.results[0] == ["0.00000e0"] * 3


def test_gamma_methods_in_bench():
    run = run_benchmark("f1", ["gamma3", "m4"], "5", gamma="1")
    assert run.methods == ["gamma3", "m4"]
    assert all(len(r) == 3 for r in run.results)
