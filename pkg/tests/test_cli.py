import json
import math
import subprocess
import sys

import numpy as np
import pytest

from stiefelcurv.blockfile import format_blocks
from stiefelcurv.cli import main

R2 = math.sqrt(2)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_curvature_random(capsys):
    code, out, _ = run(capsys, "curvature", "--manifold", "stiefel", "--metric", "euclidean", "--n", "5", "--p", "3")
    assert code == 0
    data = json.loads(out)
    assert data["metric"] == "stiefel_euclidean" and -0.5 <= data["value"] <= 1


def test_curvature_from_file(capsys, tmp_path):
    f = tmp_path / "t.txt"
    z = np.zeros((2, 2))
    f.write_text(format_blocks({"A1": z, "B1": np.array([[0, 1], [-1, 0]]) / R2,
                                "A2": z, "B2": np.eye(2) / R2}))
    code, out, _ = run(capsys, "curvature", "--manifold", "stiefel", "--input", str(f))
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(1.25, abs=1e-12)
    code, _, err = run(capsys, "curvature", "--manifold", "stiefel", "--input", str(f), "--n", "5")
    assert code == 2 and "does not match" in err


def test_curvature_file_needs_no_normalization(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text(format_blocks({"B1": np.array([[0, 3.0], [-3.0, 0]]), "B2": 5 * np.eye(2)}))
    code, out, _ = run(capsys, "curvature", "--manifold", "grassmann", "--input", str(f))
    assert code == 0 and json.loads(out)["value"] == pytest.approx(2.0, abs=1e-12)


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "curvature", "--manifold", "so", "--n", "1")[0] == 2
    assert run(capsys, "curvature", "--manifold", "grassmann", "--metric", "euclidean", "--n", "4", "--p", "2")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    f = tmp_path / "par.txt"
    f.write_text(format_blocks({"B1": np.ones((2, 2)), "B2": 2 * np.ones((2, 2))}))
    assert run(capsys, "curvature", "--manifold", "grassmann", "--input", str(f))[0] == 3


def test_extremizer(capsys):
    code, out, _ = run(capsys, "extremizer", "--kind", "stiefel_euclid_min", "--n", "4", "--p", "2", "--verify")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["expected"] == -0.5
    assert run(capsys, "extremizer", "--kind", "grassmann_max", "--n", "3", "--p", "2")[0] == 2


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--which", "appendixA", "--grid", "100")
    assert code == 0 and json.loads(out)["argmax"] == [0.0, 0.0]
    code, out, _ = run(capsys, "bounds", "--which", "injectivity", "--geodesic-length", str(2 * math.pi))
    assert json.loads(out)["value"] == pytest.approx(math.sqrt(0.8) * math.pi)
    assert run(capsys, "bounds", "--which", "injectivity", "--geodesic-length", "-1")[0] == 2
    code, out, _ = run(capsys, "bounds", "--which", "euclidean", "--grid", "101")
    assert code == 0 and json.loads(out)["upper_max"] == 1.0


@pytest.mark.parametrize("which", ["wu-chen", "refined", "skew-commutator", "submult"])
def test_inequality(capsys, which):
    code, out, _ = run(capsys, "inequality", "--which", which, "--fuzz", "200", "--seed", "3")
    data = json.loads(out)
    assert code == 0 and data["violations"] == 0 and data["min_slack"] >= -1e-12


def test_experiment_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "experiment", "exp3-mix", "--steps", "4")
    assert code == 0 and out.startswith("i,u,k_st_canonical,k_st_euclidean\n")
    path = tmp_path / "e.json"
    code, _, _ = run(capsys, "experiment", "exp2", "--p-values", "2,3", "--trials", "5",
                     "--out", str(path), "--format", "json")
    assert code == 0 and len(json.loads(path.read_text())["records"]) == 2
    assert run(capsys, "experiment", "exp2", "--p-values", "500")[0] == 2
    code, out, _ = run(capsys, "experiment", "conjecture", "--trials", "500", "--format", "json")
    assert json.loads(out)["records"][0]["meta"]["status"] == "empirical"
    code, out, _ = run(capsys, "experiment", "exp1", "--n", "8", "--p", "4", "--steps", "2", "--transpose-b1")
    assert code == 0 and out.count("\n") == 1 + 1 + 3 * 2


def test_geodesic(capsys):
    code, out, _ = run(capsys, "geodesic", "st42", "--samples", "10000")
    data = json.loads(out)
    assert code == 0 and data["length_error"] <= 1e-6 and data["closure_error"] <= 1e-10


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "stiefelcurv", "bounds", "--which", "injectivity"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["geodesic_evaluated"] is False
