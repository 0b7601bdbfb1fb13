import subprocess
import sys

import numpy as np
import pytest

from gmewit.cli import main
from gmewit.geometry import InvariantCoords, invariant_state
from gmewit.sweep import format_matrix, read_records


def write_matrix(tmp_path, rho, name="rho.txt"):
    p = tmp_path / name
    p.write_text(format_matrix(rho))
    return str(p)


def test_classify_identity(tmp_path, capsys):
    assert main(["classify", write_matrix(tmp_path, np.eye(8) / 8)]) == 0
    out = capsys.readouterr().out
    assert "label     Separable" in out
    assert "separable True" in out


def test_classify_detected(tmp_path, capsys):
    rho = invariant_state(InvariantCoords(0.1, 0.9, 0.9, 0.0, 0.0))
    assert main(["classify", write_matrix(tmp_path, rho)]) == 2
    out = capsys.readouterr().out
    assert "GenuineTripartite" in out
    assert "orientation=+0" in out


def test_classify_bad_trace(tmp_path, capsys):
    assert main(["classify", write_matrix(tmp_path, np.eye(8) / 4)]) == 1
    assert "error" in capsys.readouterr().err


def test_classify_missing_file(tmp_path):
    assert main(["classify", str(tmp_path / "nope.txt")]) == 1


def test_dicke(capsys):
    assert main(["dicke", "--N", "4", "--k", "2"]) == 0
    out = capsys.readouterr().out
    assert "0.3333333333333333" in out
    assert main(["dicke", "--N", "4", "--k", "9"]) == 1


def test_slice_stdout(capsys):
    assert main(["slice", "--r0", "0.9", "--resolution", "5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "r1,r2,region" and len(lines) == 26
    assert main(["slice", "--r0", "1.5"]) == 1


def test_sweep_byte_identical(tmp_path, capsys):
    cfg = tmp_path / "c.yaml"
    cfg.write_text("N: 10\nlambdas: [-0.5, 0.5]\narrangements: ['12', '123']\n")
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", "--config", str(cfg), "--output", str(a)]) == 0
    assert main(["sweep", "--config", str(cfg), "--output", str(b), "--workers", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(read_records(a)) == 4


def test_sweep_config_error(tmp_path):
    cfg = tmp_path / "c.yaml"
    cfg.write_text("N: 10\nlambdas: [-1.0]\narrangements: ['12']\n")
    assert main(["sweep", "--config", str(cfg)]) == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "gmewit", "classify", write_matrix(tmp_path, np.eye(8) / 8)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "Separable" in proc.stdout


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])
