import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hydromoments import cli
from hydromoments import verify as vf
from hydromoments.quadrature import QuadratureError
from hydromoments.specfun import DivergenceError, DomainError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_expect_momentum_table_value(capsys):
    code, out, _ = run(capsys, "expect", "--n", "2", "--l", "0", "--D", "50", "--alpha", "1",
                       "--space", "momentum", "--method", "exact", "--format", "csv")
    assert code == 0
    (row,) = csv_rows(out)
    assert float(row["value"]) == pytest.approx(0.0380789, rel=5e-6)
    assert row["method"] == "exact" and row["reference"] == "" and row["rel_deviation"] == ""


def test_expect_normalization(capsys):
    code, out, _ = run(capsys, "expect", "--n", "1", "--l", "0", "--D", "3", "--alpha", "0",
                       "--space", "position", "--method", "exact", "--format", "json")
    assert code == 0
    assert json.loads(out)[0]["value"] == pytest.approx(1, rel=1e-14)


def test_expect_rational(capsys):
    code, out, _ = run(capsys, "expect", "--n", "2", "--l", "0", "--D", "50", "--alpha", "1",
                       "--space", "position", "--method", "exact", "--precision", "rational", "--format", "csv")
    assert code == 0
    assert csv_rows(out)[0]["value"] == "1375/2"


def test_precision_environment_default(capsys, monkeypatch):
    monkeypatch.setenv(cli.PRECISION_ENV, "rational")
    code, out, _ = run(capsys, "expect", "--n", "2", "--l", "0", "--D", "50", "--alpha", "2", "--format", "csv")
    assert code == 0 and csv_rows(out)[0]["value"] == "3966525/8"
    monkeypatch.setenv(cli.PRECISION_ENV, "double")
    assert run(capsys, "expect", "--n", "1", "--l", "0", "--D", "3", "--alpha", "1")[0] == 2


@pytest.mark.parametrize("method", ["large-d", "rydberg-fixed-d", "rydberg-nl-gap", "oracle"])
def test_expect_methods(capsys, method):
    code, out, _ = run(capsys, "expect", "--n", "4", "--l", "1", "--D", "5", "--alpha", "1",
                       "--space", "momentum", "--method", method, "--format", "json")
    assert code == 0
    rec = json.loads(out)[0]
    assert rec["method"] in {"largeD", "rydberg", "oracle"} and rec["value"] > 0


def test_expect_log_moment(capsys):
    code, out, _ = run(capsys, "expect", "--n", "1", "--l", "0", "--D", "3", "--log", "--format", "csv")
    assert code == 0
    (row,) = csv_rows(out)
    assert row["alpha"] == "log" and float(row["value"]) == pytest.approx(0.2296371545, abs=1e-10)


def test_negative_alpha_list(capsys):
    code, out, _ = run(capsys, "expect", "--n", "2", "--l", "0", "--D", "50", "--alpha", "-1,2", "--format", "csv")
    assert code == 0
    assert [r["alpha"] for r in csv_rows(out)] == ["-1", "2"]


def test_table1_cells(capsys):
    code, out, _ = run(capsys, "table1", "--format", "csv")
    assert code == 0
    rows = csv_rows(out)
    assert len(rows) == 3 * 4 * 4

    def cell(alpha, D, space, method):
        (r,) = [r for r in rows if r["alpha"] == alpha and r["D"] == D and r["space"] == space
                and r["method"] == method]
        return r

    assert float(cell("2", "250", "momentum", "exact")["value"]) == pytest.approx(0.0000634911, rel=5e-6)
    assert float(cell("2", "500", "position", "largeD")["value"]) == pytest.approx(4e9, rel=1e-12)
    pos = cell("1", "50", "position", "exact")
    assert float(pos["value"]) == pytest.approx(687.5, rel=1e-12)
    assert float(pos["reference"]) == 612.5 and float(pos["rel_deviation"]) > 1e-4


def test_table1_deviation_annex(capsys):
    code, out, _ = run(capsys, "table1")
    assert code == 0
    annex = out[out.index("deviation"):]
    assert "687.5" in annex and "612.5" in annex


def test_verify_exact_suite_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "exact", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["suite"] == "exact"
    assert {c["status"] for c in doc["checks"]} <= {"PASS", "WARN"}
    assert all(set(c) == {"id", "status", "observed", "required", "note"} for c in doc["checks"])


def test_verify_exit_one_on_fail(capsys, monkeypatch):
    monkeypatch.setattr(vf, "run_suite", lambda suite, jobs=1: [vf.Check("x", vf.FAIL, "1", "0")])
    code, out, _ = run(capsys, "verify", "--suite", "specfun")
    assert code == 1 and "FAIL" in out


def test_uncertainty_command(capsys):
    code, out, _ = run(capsys, "uncertainty", "--n", "1", "--l", "0", "--D", "3", "--kind", "heisenberg",
                       "--format", "csv")
    assert code == 0
    refined = [r for r in csv_rows(out) if r["bound_kind"] == "centralRefined"][0]
    assert float(refined["value"]) == pytest.approx(3) and float(refined["bound"]) == 2.25
    assert refined["satisfied"] == "true"


def test_entropy_command(capsys):
    code, out, _ = run(capsys, "entropy", "--n", "1", "--l", "0", "--D", "3", "--kind", "shannon",
                       "--space", "position", "--bound-alpha", "2", "--format", "json")
    assert code == 0
    (rec,) = json.loads(out)
    assert rec["entropy"] == pytest.approx(4.14473, abs=5e-6)
    assert rec["bound"] == pytest.approx(4.25682, abs=5e-6)
    assert rec["satisfied"] is True


def test_json_round_trip_is_byte_identical(capsys):
    _, out, _ = run(capsys, "table1", "--format", "json")
    assert cli.reemit_json(out) == out


def test_csv_header_and_line_endings(capsys):
    _, out, _ = run(capsys, "expect", "--n", "2", "--l", "0", "--D", "50", "--alpha", "1", "--format", "csv")
    assert out.splitlines()[0] == ",".join(cli.CSV_HEADER)
    assert "\r" not in out and out.endswith("\n")


def test_output_order_independent_of_jobs(capsys):
    argv = ["expect", "--n", "3", "--l", "0,1", "--D", "5,40", "--alpha", "2,-1,1", "--space", "both", "--format", "csv"]
    _, one, _ = run(capsys, *argv, "--jobs", "1")
    _, four, _ = run(capsys, *argv, "--jobs", "4")
    assert one == four
    keys = [(int(r["n"]), int(r["l"]), int(r["D"]), float(r["alpha"]), r["space"]) for r in csv_rows(one)]
    assert keys == sorted(keys)


@pytest.mark.parametrize("argv", [
    ["expect", "--n", "2", "--l", "2", "--D", "3", "--alpha", "1"],
    ["expect", "--n", "1", "--l", "0", "--D", "3", "--alpha", "-3"],
    ["expect", "--n", "1", "--l", "0", "--D", "3", "--alpha", "0.5", "--precision", "rational"],
    ["expect", "--n", "1", "--l", "0", "--D", "3", "--alpha", "1", "--jobs", "0"],
    ["entropy", "--n", "1", "--l", "0", "--D", "3", "--kind", "renyi", "--q", "2", "--bound-alpha", "2",
     "--moment-sign", "-"],
])
def test_validation_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_bad_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["expect", "--bogus"])
    assert exc.value.code == 2


@pytest.mark.parametrize("error,code", [
    (QuadratureError("no convergence"), 3), (DivergenceError("series"), 3), (OverflowError("big"), 3),
    (DomainError("pole"), 2), (ValueError("bad"), 2),
])
def test_exit_code_per_error_class(capsys, monkeypatch, error, code):
    def boom(*a, **k):
        raise error
    monkeypatch.setattr(cli, "compute_cell", boom)
    assert run(capsys, "expect", "--n", "1", "--l", "0", "--D", "3", "--alpha", "1")[0] == code


def test_cell_record_reference_invariant():
    with pytest.raises(ValueError):
        cli.CellRecord(1, 0, 3, 1, 1, "position", "exact", 1.5, reference=1.5)
    with pytest.raises(ValueError):
        cli.CellRecord(1, 0, 3, 1, 1, "position", "bogus", 1.5)


@pytest.mark.parametrize("x,text", [
    (687.5, "687.500000000"), (0.0380788651333, "0.0380788651333"), (4e9, "4.00000000000e+09"),
    (1.5e-7, "1.50000000000e-07"), (999999.9999999, "1.00000000000e+06"), (Fraction(1375, 2), "1375/2"), (3, "3"),
])
def test_number_format(x, text):
    assert cli.fmt_number(x) == text


@given(st.floats(allow_nan=False, allow_infinity=False, min_value=-1e300, max_value=1e300))
def test_number_format_keeps_twelve_digits(x):
    s = cli.fmt_number(x)
    assert float(s) == pytest.approx(x, rel=1e-11, abs=0)
    assert cli.fmt_number(float(s)) == s


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hydromoments", "expect", "--n", "1", "--l", "0", "--D", "3",
                          "--alpha", "1", "--format", "csv"], capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "1.50000000000" in res.stdout
