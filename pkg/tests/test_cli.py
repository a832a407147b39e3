import subprocess
import sys

import pytest

from wfroot.cli import catalog_lines, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_table_run(capsys):
    code, out, _ = run(capsys, "solve", "--problem", "f1", "--method", "m1", "--x0", "5",
                       "--digits", "200", "--iters", "3")
    assert code == 0
    assert "final error: 0.29108e-167" in out
    assert "n=1" in out and "n=3" in out
    assert "COC: 4.0" in out


def test_solve_unknown_method(capsys):
    code, _, err = run(capsys, "solve", "--method", "nosuch")
    assert code == 1 and "unknown method" in err


def test_solve_tolerance(capsys):
    code, out, _ = run(capsys, "solve", "--problem", "f1", "--method", "newton", "--tol", "1e-50")
    assert code == 0
    # errors 2e-5, 8e-12, 1e-24, 3e-50: four steps push |f| below 1e-50
    steps = [line for line in out.splitlines() if line.startswith("n=")]
    assert len(steps) == 4
    assert "|f(x)|=0.54772e-50" in steps[-1]


def test_solve_tolerance_not_reached(capsys):
    code, _, err = run(capsys, "solve", "--problem", "f1", "--method", "newton", "--tol", "1e-150",
                       "--max-iters", "3")
    assert code == 2 and "not reached" in err


def test_solve_failure(capsys):
    code, _, err = run(capsys, "solve", "--problem", "f4", "--method", "newton", "--x0", "1")
    assert code == 2 and "failure" in err


def test_solve_usage_errors(capsys):
    assert run(capsys, "solve", "--method", "m4")[0] == 1
    assert run(capsys, "solve", "--method", "m1", "--digits", "10")[0] == 1
    assert run(capsys, "solve", "--method", "m1", "--x0", "five")[0] == 1
    assert run(capsys, "solve", "--method", "m1", "--problem", "f9")[0] == 1
    assert run(capsys, "solve", "--method", "m1", "--bogus")[0] == 1
    assert run(capsys, "solve", "--method", "m1", "--iters", "2", "--tol", "1e-5")[0] == 1
    assert run(capsys)[0] == 1


def test_solve_gamma_warning(capsys):
    code, _, err = run(capsys, "solve", "--method", "m4", "--gamma", "1.0", "--iters", "2")
    assert code == 0 and "exact rational 1" in err
    code, _, err = run(capsys, "solve", "--method", "m4", "--gamma", "1", "--iters", "2")
    assert code == 0 and err == ""


def test_solve_problem_file(capsys, tmp_path):
    path = tmp_path / "problems.txt"
    path.write_text(
        "# two problems\n"
        "label = sqrt2\nf = x^2 - 2\nroot = 1.4142135623730950488\nx0 = 1\n\n"
        "label = cubic\nf = x^3 - 2*x - 5\nfprime = 3*x^2 - 2\nroot = 2.0945514815423265915\nx0 = 2\n"
    )
    code, out, _ = run(capsys, "solve", "--problem", str(path), "--label", "cubic", "--method", "m1")
    assert code == 0 and "on cubic" in out
    code, out, _ = run(capsys, "solve", "--problem", str(path), "--method", "chun")
    assert code == 0 and "on sqrt2" in out
    assert run(capsys, "solve", "--problem", str(path), "--label", "nope", "--method", "m1")[0] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("label = x\nf = import os\n")
    assert run(capsys, "solve", "--problem", str(bad), "--method", "m1")[0] == 1


def test_verify_theorems(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "1")
    assert code == 0
    assert "(1/2)[-4 c2^2 A''(1) + 4 c2^2 + c3] e^3" in out
    code, out, _ = run(capsys, "verify", "--theorem", "2")
    assert code == 0
    assert "a in ['2/3']" in out
    assert "P''(1)" in out and "Q'''(1)" in out


def test_verify_methods(capsys):
    code, out, _ = run(capsys, "verify", "--method", "m1")
    assert code == 0 and "order: 4" in out and "conditions: " in out
    code, out, _ = run(capsys, "verify", "--method", "m3")
    assert code == 3
    assert "leading coefficient: 103/27*c2^3 - c2*c3 + 1/9*c4" in out
    assert "DISCREPANCY" in out and "1/9" in out
    code, out, _ = run(capsys, "verify", "--method", "m4", "--gamma", "1")
    assert code == 0 and "order: 4" in out and "matches" in out
    code, out, _ = run(capsys, "verify", "--method", "m4")
    assert code == 3
    assert "vanishes for gamma in ['1']" in out
    code, out, _ = run(capsys, "verify", "--method", "gamma3")
    assert code == 0 and "gamma" in out


def test_verify_usage(capsys):
    assert run(capsys, "verify")[0] == 1
    assert run(capsys, "verify", "--method", "nosuch")[0] == 1
    assert run(capsys, "verify", "--theorem", "3")[0] == 1
    assert run(capsys, "verify", "--method", "m1", "--theorem", "1")[0] == 1


def test_bench_table(capsys):
    code, out, _ = run(capsys, "bench", "--table", "2", "--format", "md")
    assert code == 0
    assert "| Newton | 0.21464e-4 | 0.83264e-11 | 0.12530e-23 |" in out
    assert out.count("\n| ") == 6


def test_bench_flagged_table(capsys):
    code, out, _ = run(capsys, "bench", "--table", "5")
    assert code == 4 and "0.72263e-10*" in out


def test_bench_problem(capsys, tmp_path):
    target = tmp_path / "t4.csv"
    code, out, _ = run(capsys, "bench", "--problem", "f3", "--methods", "m1", "--format", "csv",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == "method,e1,e2,e3\nm1,0.24363e-7,0.14724e-30,0.19642e-123\n"


def test_bench_usage(capsys):
    assert run(capsys, "bench", "--table", "9")[0] == 1
    assert run(capsys, "bench")[0] == 1
    assert run(capsys, "bench", "--table", "2", "--methods", "nosuch")[0] == 1
    assert run(capsys, "bench", "--table", "2", "--methods", "m4")[0] == 1
    assert run(capsys, "bench", "--table", "2", "--format", "xml")[0] == 1


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) >= 9
    assert any(line.startswith("chun  order=3  A(t)=(3-t)/2  EI=1.442") for line in lines)
    assert any(line.startswith("m1  order=4  EI(3 evals)=1.587") for line in lines)
    assert any(line.startswith("newton  order=2  EI=1.414") for line in lines)
    assert lines == catalog_lines()


def test_digits_do_not_change_symbolic_output(capsys):
    # verify has no --digits flag at all; solve output depends on it
    assert run(capsys, "verify", "--method", "m1", "--digits", "50")[0] == 1
    a = run(capsys, "solve", "--method", "m1", "--digits", "50")[1]
    b = run(capsys, "solve", "--method", "m1", "--digits", "60")[1]
    assert a != b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wfroot", "catalog"], capture_output=True, text=True)
    assert proc.returncode == 0 and "m4" in proc.stdout
