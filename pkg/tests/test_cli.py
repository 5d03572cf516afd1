import json
import math

import numpy as np
import pytest

from orthoseed.cli import main
from orthoseed.measure import make_catalog_measure, measure_to_spec, reference_recurrence
from orthoseed.quad import monomial_moments


def _write_spec(tmp_path, name, spec):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(spec))
    return str(path)


@pytest.fixture
def legendre(tmp_path):
    return _write_spec(tmp_path, "leg", {"pieces": [{"interval": [-1, 1],
                       "weight": {"kind": "jacobi", "params": [0, 0]}, "alpha": 0, "beta": 0}]})


@pytest.fixture
def atoms(tmp_path):
    return _write_spec(tmp_path, "atoms", {"atoms": [{"tau": 0.5, "nu": 0.25}, {"tau": -0.3, "nu": 0.5},
                                                     {"tau": 0.1, "nu": 0.25}]})


def _read_csv(path):
    lines = open(path).read().splitlines()
    return lines[0], [l.split(",") for l in lines[1:]]


def test_compute_csv(tmp_path, legendre):
    out = tmp_path / "c.csv"
    assert main(["compute", "--measure", legendre, "--algo", "pc", "-N", "10", "--out", str(out)]) == 0
    header, rows = _read_csv(out)
    assert header == "n,a,b"
    ref = reference_recurrence("jacobi", (0, 0), 10)
    assert len(rows) == 11
    assert rows[0][1] == "" and rows[10][2] == ""
    for n in range(1, 11):
        assert abs(float(rows[n][1])) < 1e-14
    for n in range(10):
        assert float(rows[n][2]) == pytest.approx(ref.b[n], rel=1e-13)


def test_compute_json(tmp_path, legendre):
    out = tmp_path / "c.json"
    assert main(["compute", "--measure", legendre, "--algo", "sp", "-N", "5", "--out", str(out),
                 "--format", "json"]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["a"]) == 5 and len(doc["b"]) == 5 and doc["failure_index"] is None


def test_compute_too_many_for_atoms(tmp_path, atoms, capsys):
    assert main(["compute", "--measure", atoms, "--algo", "pc", "-N", "4",
                 "--out", str(tmp_path / "x.csv")]) == 1
    assert "at most 3" in capsys.readouterr().err


def test_compute_dp_flagged(tmp_path):
    spec = _write_spec(tmp_path, "f4", measure_to_spec(make_catalog_measure("freud", (4, 0))))
    out = tmp_path / "dp.json"
    assert main(["compute", "--measure", spec, "--algo", "dp", "-N", "100", "--out", str(out),
                 "--format", "json"]) == 2
    doc = json.loads(out.read_text())
    assert doc["failure_index"] is not None and doc["failure_index"] <= 100
    assert len(doc["b"]) == doc["failure_index"]


@pytest.mark.parametrize("argv", [
    ["compute", "--measure", "/nonexistent.json", "--algo", "sp", "-N", "3"],
    ["compute", "--measure", "SPEC", "--algo", "zz", "-N", "3"],
    ["compute", "--measure", "SPEC", "--algo", "sp", "-N", "0"],
    ["compute", "--measure", "SPEC", "--algo", "sp", "-N", "x"],
    ["experiment", "--name", "nope", "--out-dir", "OUT"],
    ["experiment", "--name", "pws", "--param", "oops", "--out-dir", "OUT"],
])
def test_input_errors(tmp_path, legendre, argv):
    argv = [legendre if a == "SPEC" else str(tmp_path) if a == "OUT" else a for a in argv]
    assert main(argv) == 1


def test_bad_json_spec(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["compute", "--measure", str(bad), "--algo", "sp", "-N", "3"]) == 1


def _rule(path):
    _, rows = _read_csv(path)
    return np.array([float(r[1]) for r in rows]), np.array([float(r[2]) for r in rows])


def test_quadrature_legendre(tmp_path, legendre):
    out = tmp_path / "q.csv"
    assert main(["quadrature", "--measure", legendre, "-K", "2", "--out", str(out)]) == 0
    x, w = _rule(out)
    assert np.allclose(x, [-3 ** -0.5, 3 ** -0.5], atol=1e-15) and np.allclose(w, 1, rtol=1e-14)


def test_quadrature_atoms_full_order(tmp_path, atoms):
    out = tmp_path / "q.csv"
    assert main(["quadrature", "--measure", atoms, "-K", "3", "--out", str(out)]) == 0
    x, w = _rule(out)
    assert np.allclose(x, [-0.3, 0.1, 0.5], atol=1e-12)
    assert np.allclose(w, [0.5, 0.25, 0.25], atol=1e-12)


def test_quadrature_pws(tmp_path):
    m = make_catalog_measure("pws", (1, -0.5, -0.5, 0.1))
    spec = _write_spec(tmp_path, "pws", measure_to_spec(m))
    out = tmp_path / "q.csv"
    assert main(["quadrature", "--measure", spec, "-K", "20", "--out", str(out)]) == 0
    x, w = _rule(out)
    assert np.all(w > 0) and np.all(np.diff(x) > 0)
    mom = monomial_moments(m, 40)
    assert w.sum() == pytest.approx(mom[0], rel=1e-11)
    for j in range(40):
        assert abs(np.sum(w * x**j) - mom[j]) <= 1e-11 * max(abs(mom[j]), np.sum(w * np.abs(x) ** j))


def test_experiment_outputs(tmp_path):
    assert main(["experiment", "--name", "freud4", "--param", "N=20", "--param", "repeats=1",
                 "--out-dir", str(tmp_path)]) == 0
    assert (tmp_path / "freud4.csv").exists()
    assert (tmp_path / "freud4_series.csv").exists()
    doc = json.loads((tmp_path / "freud4.json").read_text())
    assert doc["metadata"]["version"]
    assert main(["experiment", "--name", "discrete_convolution", "--seed", "11", "--param", "M=50",
                 "--param", "N=20", "--out-dir", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "discrete_convolution.json").read_text())
    assert doc["metadata"]["seed"] == 11
