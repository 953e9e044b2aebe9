import csv
import io
import json
import subprocess
import sys

import pytest


def pg4(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "pg4curves", *map(str, args)],
                          capture_output=True, text=True, cwd=cwd)


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.fixture
def curve_file(tmp_path):
    def make(text, name="c.curve"):
        p = tmp_path / name
        p.write_text(text + "\n")
        return p
    return make


def test_version():
    out = pg4("--version")
    assert out.returncode == 0 and out.stdout.startswith("pg4 ")


def test_frenet_csv_cosh(curve_file):
    out = pg4("frenet", curve_file("x=s; y=cosh(s); z=sinh(s); w=0 on [0,1]"), "--at", 0, 0.5, "--format", "csv")
    assert out.returncode == 0
    r = rows(out.stdout)
    assert len(r) == 2
    for row in r:
        assert float(row["kappa"]) == pytest.approx(1.0, abs=1e-12)
        assert float(row["tau"]) == pytest.approx(1.0, abs=1e-12)
        assert (row["eps1"], row["eps2"], row["eps3"]) == ("-1", "1", "1")


def test_frenet_json_schema(curve_file):
    out = pg4("frenet", curve_file("x=s; y=cosh(s); z=sinh(s); w=0 on [0,1]"), "--grid", 11)
    doc = json.loads(out.stdout)
    assert doc["schema"] == "pg4-curves/1" and doc["command"] == "frenet"
    assert "kappa" in doc["columns"]


def test_straight_line_exits_with_geometry_code(curve_file):
    out = pg4("frenet", curve_file("x=s; y=0; z=s; w=0 on [0,1]"))
    assert out.returncode == 3
    assert out.stderr.startswith("DegenerateFirstCurvature")


def test_parse_error_is_located(curve_file):
    out = pg4("frenet", curve_file("x=s; y=foo(s); z=0; w=0 on [0,1]"))
    assert out.returncode == 2
    assert "line 1, column 8" in out.stderr


def test_grid_below_minimum_is_rejected(curve_file):
    out = pg4("frenet", curve_file("x=s; y=cosh(s); z=sinh(s); w=0 on [0,1]"), "--grid", 5)
    assert out.returncode == 2


def test_reparam_linear(curve_file):
    out = pg4("reparam", curve_file("x=2*t; y=t; z=0; w=0 on [0,1]"), "--grid", 11, "--format", "csv")
    assert out.returncode == 0
    for row in rows(out.stdout):
        assert float(row["y"]) == pytest.approx(float(row["s"]) / 2, abs=1e-12)


def test_reparam_not_admissible(curve_file):
    assert pg4("reparam", curve_file("x=t^3; y=t; z=0; w=0 on [-1,1]"), "--grid", 11).returncode == 3


def test_reparam_monotone_arclength(curve_file):
    out = pg4("reparam", curve_file("x=exp(t); y=t^2; z=t; w=0 on [0,1]"), "--grid", 11, "--format", "csv")
    s = [float(row["s"]) for row in rows(out.stdout)]
    assert all(a < b for a, b in zip(s, s[1:]))
    assert s[-1] - s[0] == pytest.approx(2.718281828459045 - 1.0, rel=1e-12)


def test_synthesize_then_classify(tmp_path):
    target = tmp_path / "w.csv"
    out = pg4("synthesize", "--wcurve", 1, 2, 3, "--signs", -1, 1, 1, "--format", "csv", "--out", target)
    assert out.returncode == 0
    assert target.exists() and (tmp_path / "w.json").exists()
    cls = pg4("classify", target)
    assert cls.returncode == 0
    doc = json.loads(cls.stdout)
    assert doc["schema"] == "pg4-curves/1"
    assert doc["w_curve"] is True
    assert doc["report"]["flags"]["w_curve"]["fitted_constants"]["sigma"] == pytest.approx(3.0, abs=1e-6)


def test_synthesize_bad_signature():
    out = pg4("synthesize", "--wcurve", 1, 2, 3, "--signs", 1, 1, 1)
    assert out.returncode == 4
    assert out.stderr.startswith("InconsistentSignature")


def test_synthesize_rectifying_singular_offset():
    assert pg4("synthesize", "--rectifying", "--c", 0, "--signs", -1, 1, 1).returncode == 4


def test_audit_marks_sigma_zero_rows(curve_file):
    out = pg4("audit", curve_file("x=s; y=cosh(s); z=sinh(s); w=0 on [0,1]"), "--format", "csv")
    notes = [line for line in out.stdout.splitlines() if "not applicable: sigma=0" in line]
    assert any(n.startswith("residuals.fourth_order") for n in notes)
    assert any(n.startswith("residuals.sphere_radius_derivative") for n in notes)
