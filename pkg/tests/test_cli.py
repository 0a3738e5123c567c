import csv
import io
import json
from importlib import resources

import jsonschema
import numpy as np
import pytest
from scipy.integrate import simpson

from quartic_qes.cli import run
from quartic_qes.qes import closed_form_n1

SCHEMA = json.loads(resources.files("quartic_qes").joinpath("schemas/result.schema.json").read_text())


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_json(capsys, *argv):
    code, out, err = call(capsys, "--format", "json", *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc, err


def test_solve_closed_form(capsys):
    code, doc, _ = as_json(capsys, "solve", "--n", "1", "--parity", "even", "--beta1", "0.7", "--beta3", "0.1")
    assert code == 0
    (s,) = doc["solutions"]
    E, b2 = closed_form_n1("even", 0.7, 0.1)
    assert s["E"] == pytest.approx(E, abs=1e-12)
    assert s["beta2"] == pytest.approx(b2, abs=1e-12)
    assert doc["command"] == "solve"
    assert doc["checks"]["ok"]


def test_solve_no_solution_exit_2(capsys):
    # N=0 even with beta1 != 0 is beta2 = beta1**2 at E = beta1**2/2... odd N=0 has none for beta1 > 0
    code, out, err = call(capsys, "solve", "--n", "0", "--parity", "odd", "--beta1", "0.5", "--beta3", "0.1")
    assert code == 2
    assert "no odd N=0 solution" in err


def test_usage_errors_exit_1(capsys):
    assert call(capsys, "solve", "--n", "1", "--beta1", "0.7")[0] == 1
    assert call(capsys, "solve", "--n", "1", "--beta1", "0.7", "--beta3", "-1")[0] == 1
    assert call(capsys, "--format", "xml", "solve")[0] == 1
    assert call(capsys, "nonsense")[0] == 1
    assert call(capsys, "oracle", "--alpha", "-2", "--beta1", "0.7", "--beta2", "0.5", "--beta3", "0.1",
                "--grid", "51")[0] == 1
    assert call(capsys, "--format", "csv", "scan", "--n", "1", "--beta1-range", "0.5", "0.3", "3",
                "--beta3-range", "0.1", "0.1", "1")[0] == 1


def test_oracle_and_nonconvergence(capsys):
    code, doc, _ = as_json(capsys, "oracle", "--n", "1", "--beta1", "-0.7", "--beta3", "0.1", "--grid", "1001",
                           "--eigen-count", "4")
    assert code == 0
    (s,) = [a for a in doc["solutions"] if a["parity"] == "even"]
    assert s["rank"] == 2
    assert s["deviation"] <= 1e-5
    assert doc["checks"]["analytic_matched"]
    code, _, err = call(capsys, "oracle", "--n", "1", "--beta1", "-0.7", "--beta3", "0.1", "--grid", "201",
                        "--levels", "2", "--convergence-tol", "1e-9")
    assert code == 3


def test_table1_ratios_and_exit_code(capsys):
    code, doc, err = as_json(capsys, "table1")
    assert code == 0
    assert doc["checks"]["ratios_ok"]
    assert doc["checks"]["max_deviation"] <= 1e-8
    matched = [s for s in doc["solutions"] if s["status"] == "match"]
    assert len(matched) == 12
    # a mismatch of the pinned ratios is exit 4
    code, _, _ = call(capsys, "table1", "--beta1", "1.0", "--tol", "1e-300")
    assert code == 4


def test_outputs_are_byte_identical(tmp_path, capsys):
    args = ["scan", "--n", "1", "--beta1-range", "0.3", "0.9", "4", "--beta3-range", "0.1", "0.3", "2"]
    for d in ("a", "b"):
        for fmt in ("csv", "json"):
            assert run(["--format", fmt, "--out", str(tmp_path / d), *args]) == 0
    capsys.readouterr()
    for name in ("scan.csv", "scan.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_scan_matches_closed_form(capsys):
    code, out, _ = call(capsys, "--format", "csv", "scan", "--n", "1", "--beta1-range", "0.3", "1.2", "4",
                        "--beta3-range", "0.05", "0.4", "3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 12
    for r in rows:
        E, b2 = closed_form_n1("even", float(r["beta1"]), float(r["beta3"]))
        assert float(r["E"]) == pytest.approx(E, abs=1e-10)
        assert float(r["beta2"]) == pytest.approx(b2, abs=1e-10)
        assert float(r["scaling_defect"]) <= 1e-8


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("[DEFAULT]\nformat = csv\nseed = 7\n\n[solve]\nn = 1\nbeta1 = 0.7\nbeta3 = 0.1\n")
    code, out, _ = call(capsys, "--config", str(cfg), "solve")
    assert code == 0
    assert out.startswith("E,") or "beta2" in out.splitlines()[0]
    # command-line flags win over the file
    code, out, _ = call(capsys, "--config", str(cfg), "--format", "json", "solve", "--beta1", "0.5")
    doc = json.loads(out)
    assert doc["params"]["seed"] == 7
    assert doc["params"]["beta1"] == 0.5


@pytest.mark.parametrize("figure", [1, 2, 3, 4, 5])
def test_figure_data_normalized(tmp_path, capsys, figure):
    code = run(["--out", str(tmp_path), "figure-data", "--figure", str(figure), "--points", "1001"])
    capsys.readouterr()
    assert code == 0
    doc = json.loads((tmp_path / f"figure{figure}_summary.json").read_text())
    jsonschema.validate(doc, SCHEMA)
    for name in doc["checks"]["files"]:
        data = np.genfromtxt(tmp_path / name, delimiter=",", names=True)
        y = np.concatenate([[-np.pi / 2], data["y"], [np.pi / 2]])
        for col in data.dtype.names:
            if col.startswith("psi"):
                sq = np.concatenate([[0.0], data[col] ** 2, [0.0]])
                assert simpson(sq, x=y) == pytest.approx(1.0, abs=1e-9)
    assert len(doc["solutions"]) == {1: 2, 2: 2, 3: 2, 4: 2, 5: 4}[figure]
