import json
import subprocess
import sys

import numpy as np
import pytest

from minmod.cli import cli_main, run
from minmod.fileio import read_matrix, write_matrix


@pytest.fixture
def files(tmp_path):
    write_matrix(tmp_path / "diag023.mtx", np.diag([0.0, 2.0, 3.0]))
    write_matrix(tmp_path / "id1.mtx", np.eye(1))
    write_matrix(tmp_path / "d23.mtx", np.diag([2.0, 3.0]))
    (tmp_path / "m.csv").write_text("1,1\n")
    (tmp_path / "c.csv").write_text("1+1j,2\n0,3-1j\n0.5,0\n")
    (tmp_path / "projection.json").write_text(
        json.dumps({"atoms": [{"value": 0, "mult": "inf"}, {"value": 1, "mult": "inf"}], "tails": [], "positive": True})
    )
    (tmp_path / "k.json").write_text(
        json.dumps({"atoms": [], "tails": [{"kind": "inc_unbounded", "a": 0, "c": 1}], "positive": True})
    )
    (tmp_path / "sl.json").write_text(
        json.dumps(
            {"p": {"const": 1}, "q": {"const": 0}, "w": {"const": 1}, "a": 0, "b": np.pi,
             "robin_left": [1, 0], "robin_right": [1, 0], "n": 400}
        )
    )
    return tmp_path


def call(*argv):
    code, rep = run([str(a) for a in argv])
    return code, (None if rep is None else json.loads(rep.to_json()))


def test_moduli_example(files):
    code, rep = call("moduli", files / "diag023.mtx")
    assert code == 0
    assert rep["results"]["report"]["m"] == 0.0 and rep["results"]["report"]["gamma"] == 2.0
    assert rep["input_digest"].startswith("sha256:") and rep["seed"] == 42


def test_am_example(files):
    code, rep = call("am", files / "projection.json")
    assert code == 0
    v = rep["results"]["verdict"]
    assert v["is_am"] is False and v["failed_condition"] == "MULTIPLE_INFINITE_MULTIPLICITIES"


def test_transform_example(files):
    code, rep = call("transform", files / "id1.mtx")
    assert code == 0
    a, b = rep["results"]["forward_pair"]["values"]
    assert abs(a - 0.7071067811865476) < 1e-15 and a == b


@pytest.mark.parametrize("cmd", ["moduli", "pinv", "polar", "transform", "attain"])
def test_dense_commands_succeed(files, cmd):
    code, rep = call(cmd, files / "c.csv")
    assert code == 0 and rep["violations"] == []


def test_restrict_and_duality(files):
    code, rep = call("restrict", files / "d23.mtx", "--subspace", files / "m.csv")
    assert code == 0
    assert abs(rep["results"]["restricted_min"] - np.sqrt(6.5)) < 1e-12


def test_sturm_and_audit(files):
    code, rep = call("sturm", files / "sl.json", "-k", 3)
    assert code == 0 and rep["results"]["am_certified"]
    code, rep = call("audit", files / "k.json", "--sizes", "8,16", "--trials", 3)
    assert code == 0 and [e["gamma_n"] for e in rep["results"]["entries"]] == [1.0, 1.0]


def test_tolerance_scaling_reports_violation(files):
    # a vanishing tolerance turns rounding-level residuals into violations
    code, rep = call("pinv", files / "c.csv", "--tol", 1e-30)
    assert code == 2 and rep["violations"]
    assert rep["tolerances"]["identity_rtol"] == pytest.approx(1e-38)


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus", "x"],
        ["moduli", "missing.mtx"],
        ["restrict", "d23.mtx"],
        ["sturm", "sl.json"],
        ["audit", "k.json", "--sizes", "a,b"],
        ["moduli", "bad.json"],
    ],
)
def test_input_errors_exit_1(files, argv, capsys, monkeypatch):
    monkeypatch.chdir(files)
    (files / "bad.json").write_text("{not json")
    assert cli_main(argv) == 1
    err = capsys.readouterr().err
    assert "usage:" in err


def test_determinism_subprocess(files):
    cmd = [sys.executable, "-m", "minmod", "audit", str(files / "k.json"), "--sizes", "8,32", "--trials", "5"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_csv_and_mtx_agree(files):
    A = read_matrix(files / "c.csv")
    write_matrix(files / "c.mtx", A)
    assert np.array_equal(read_matrix(files / "c.mtx"), A)
