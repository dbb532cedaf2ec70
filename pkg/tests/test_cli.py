import csv
import io
import json

import numpy as np
import pytest

from freud_uvarov.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tables_csv(capsys):
    code, out, err = run(capsys, "tables", "4")
    assert code == 0
    assert "\r" not in out
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 7 * 4
    assert sum(r["quantity"].startswith("Q zero") for r in rows) == 14
    assert sum(r["quantity"].startswith("u roots") for r in rows) == 14
    assert "ghost polynomials" in err


def test_tables_json_schema_and_flag(capsys):
    code, out, _ = run(capsys, "tables", "6", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"command", "params", "results", "residuals", "pass"}
    assert doc["pass"] is True
    assert any("table 6" in n for n in doc["results"]["notes"])


def test_tight_table_tolerance_fails(capsys):
    code, _, err = run(capsys, "tables", "4", "--tol-tables", "1e-9")
    assert code == 2
    assert "tolerance failure" in err


def test_suite_and_corruption(capsys):
    code, out, _ = run(capsys, "suite", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["pass"]
    suites = {r["suite"] for r in doc["results"]["rows"]}
    assert {"string", "toda", "structure", "ladder", "ode", "electrostatic", "motion",
            "monotonicity"} <= suites
    code, out, _ = run(capsys, "suite", "--corrupt", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 2 and not doc["pass"]
    bad = {r["suite"] for r in doc["results"]["rows"] if not r["pass"]}
    assert "string" in bad


def test_suite_low_precision_same_verdict(capsys):
    code, out, _ = run(capsys, "suite", "--digits", "40", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert all(r["pass"] for r in doc["results"]["rows"])


def test_figure1(capsys, tmp_path):
    path = tmp_path / "fig.csv"
    code, _, _ = run(capsys, "figure1", "--out", str(path))
    assert code == 0
    text = path.read_bytes().decode()
    assert "\r" not in text
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 400
    assert list(rows[0]) == ["x", "Q3", "Q5", "Q4_M0", "Q4_M02", "Q4_M06"]
    x = np.array([float(r["x"]) for r in rows])
    q4 = np.array([float(r["Q4_M0"]) for r in rows])
    changes = x[1:][np.sign(q4[1:]) != np.sign(q4[:-1])]
    assert np.allclose(np.sort(np.abs(changes))[::2], [0.6156, 1.3002], atol=0.011)
    # odd degrees do not depend on the mass
    _, out, _ = run(capsys, "figure1", "--M", "7")
    other = list(csv.DictReader(io.StringIO(out)))
    assert [r["Q3"] for r in other] == [r["Q3"] for r in rows]
    assert [r["Q5"] for r in other] == [r["Q5"] for r in rows]


@pytest.mark.parametrize("argv", [
    ("recurrence", "--n-max", "10"),
    ("moments", "--n", "6"),
    ("zeros", "--family", "uvarov", "--n", "6", "--M", "2"),
    ("zeros", "--family", "christoffel2", "--n", "5"),
    ("zeros", "--family", "uvarov", "--M-grid", "0,0.5,5"),
    ("ode-check", "--n", "5"),
    ("ode-check", "--n", "4", "--t", "0.5"),
    ("electro", "--m", "3", "--M", "5"),
    ("motion", "--steps", "10", "--t0", "0.9"),
    ("motion", "--family", "uvarov", "--steps", "10", "--t0", "0.9"),
])
def test_commands_succeed(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == argv[0] and doc["pass"]


def test_ode_check_flags_the_general_table(capsys):
    _, out, _ = run(capsys, "ode-check", "--n", "4", "--format", "json")
    doc = json.loads(out)
    assert any("x^4 coefficient" in n for n in doc["results"]["notes"])
    assert doc["residuals"]["table_even"] < 1e-60


def test_motion_csv_columns(capsys):
    _, out, _ = run(capsys, "motion", "--steps", "4", "--t0", "0.9")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["t", "y_1", "y_2", "y_3", "y_4"]
    assert len(rows) == 5


@pytest.mark.parametrize("argv", [
    ("tables", "9"),
    ("zeros", "--t", "-1"),
    ("zeros", "--M", "nan"),
    ("motion", "--t0", "0"),
    ("suite", "--corrupt", "99"),
    ("zeros", "--family", "uvarov", "--n", "3", "--M-grid", "0,1"),
    ("recurrence", "--digits", "5"),
    ("nonsense",),
    (),
])
def test_argument_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(list(argv))
        raise SystemExit(code)
    assert exc.value.code == 1


def test_help_lists_defaults(capsys):
    parser = build_parser()
    with pytest.raises(SystemExit):
        parser.parse_args(["suite", "--help"])
    out = capsys.readouterr().out
    assert "--tol-string" in out and "default 1e-10" in out
