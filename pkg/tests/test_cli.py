import json
import re
import subprocess
import sys

import numpy as np
import pytest

from qtfa.cli import main
from qtfa.cohen import cohen
from qtfa.io import read_matrix, write_matrix
from qtfa.operators import kernel_to_symbol, rank_one
from qtfa.phase_space import double_symplectic_dft
from qtfa.tfa import gaussian_window, stft


def run(*argv):
    return subprocess.run([sys.executable, "-m", "qtfa", *argv], capture_output=True, text=True)


def test_suite_writes_report(tmp_path, capsys):
    assert main(["suite", "--name", "moyal", "--n", "7", "--seed", "3", "--out", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "suite-moyal-N7-seed3.json").read_text())
    assert report["pass"] and report["N"] == 7 and report["seed"] == 3
    assert {r["suite"] for r in report["results"]} == {"moyal"}
    out = capsys.readouterr().out
    assert out.count("PASS") == len(report["results"]) and "FAIL" not in out


@pytest.mark.parametrize("n", ["6", "1", "x"])
def test_bad_modulus_exits_2(n, tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["suite", "--n", n, "--out", str(tmp_path)])
    assert info.value.code == 2


def test_missing_command_exits_2(capsys):
    assert main([]) == 2


def test_listing_uses_topics(capsys):
    assert main(["--list"]) == 0
    out = capsys.readouterr().out
    assert "cocycle" in out and "moyal" in out
    assert not re.search(r"\d+\.\d+\.\d+|§|[Ee]q\.|[Ss]ection|[Tt]heorem \d|[Ll]emma \d", out)
    assert main(["suite", "--list"]) == 0


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0 and "qtfa" in capsys.readouterr().out


def test_suite_determinism_subprocess(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        r = run("suite", "--name", "cocycle", "--n", "5", "--seed", "42", "--out", str(d))
        assert r.returncode == 0, r.stderr
    name = "suite-cocycle-N5-seed42.json"
    assert (a / name).read_bytes() == (b / name).read_bytes()


def test_transform_stft_and_ppm(tmp_path, cvec):
    f = cvec(7)
    write_matrix(tmp_path / "f.csv", f)
    assert main(["transform", "stft", str(tmp_path / "f.csv"), "--out", str(tmp_path), "--ppm"]) == 0
    assert np.abs(read_matrix(tmp_path / "stft.csv") - stft(f, gaussian_window(7))).max() < 1e-14
    assert (tmp_path / "stft.ppm").read_bytes()[:3] == b"P6\n"


def test_transform_symbol_binary(tmp_path, cvec):
    S = cvec(5, 5)
    write_matrix(tmp_path / "s.bin", S)
    argv = ["transform", "symbol", str(tmp_path / "s.bin"), "--out", str(tmp_path), "--format", "bin", "--name", "sig"]
    assert main(argv) == 0
    assert np.abs(read_matrix(tmp_path / "sig.bin") - kernel_to_symbol(S)).max() < 1e-14


def test_transform_cohen_and_fphi(tmp_path, cvec):
    N = 5
    T = cvec(N, N)
    write_matrix(tmp_path / "t.csv", T)
    assert main(["transform", "cohen", str(tmp_path / "t.csv"), "--out", str(tmp_path)]) == 0
    g = gaussian_window(N)
    Q = cohen(rank_one(g, g), T)
    assert np.abs(read_matrix(tmp_path / "cohen.csv") - Q.reshape(N * N, N * N)).max() < 1e-12
    assert main(["transform", "fphi", str(tmp_path / "cohen.csv"), "--out", str(tmp_path)]) == 0
    ref = double_symplectic_dft(Q).reshape(N * N, N * N)
    assert np.abs(read_matrix(tmp_path / "fphi.csv") - ref).max() < 1e-11


def test_transform_usage_errors(tmp_path, cvec, capsys):
    write_matrix(tmp_path / "f.csv", cvec(5))
    write_matrix(tmp_path / "s.csv", cvec(5, 5))
    assert main(["transform", "symbol", str(tmp_path / "f.csv"), "--out", str(tmp_path)]) == 2
    assert main(["transform", "stft", str(tmp_path / "s.csv"), "--out", str(tmp_path)]) == 2
    assert main(["transform", "stft", str(tmp_path / "f.csv"), "--n", "7", "--out", str(tmp_path)]) == 2
    write_matrix(tmp_path / "e.csv", cvec(4, 4))
    assert main(["transform", "symbol", str(tmp_path / "e.csv"), "--out", str(tmp_path)]) == 2
    assert "qtfa: error:" in capsys.readouterr().err


def test_input_diagnostics(tmp_path, capsys):
    (tmp_path / "empty.csv").write_text("")
    assert main(["transform", "symbol", str(tmp_path / "empty.csv"), "--out", str(tmp_path)]) == 2
    assert "empty.csv, line 1: empty input" in capsys.readouterr().err
    (tmp_path / "bad.csv").write_text("# qtfa-complex v1, 2, 2\n1.0+0.0i,0.0+0.0i\n0.0+0.0i,oops\n")
    assert main(["transform", "symbol", str(tmp_path / "bad.csv"), "--out", str(tmp_path)]) == 2
    assert "line 3, field 2" in capsys.readouterr().err
    assert main(["transform", "symbol", str(tmp_path / "nope.csv"), "--out", str(tmp_path)]) == 2


def test_frame_report(tmp_path):
    assert main(["frame", "--n", "15", "--lattice", "3,3", "--out", str(tmp_path)]) == 0
    rep = json.loads((tmp_path / "frame-N15-a3-b3.json").read_text())
    assert rep["frame"] and not rep["tight"] and rep["points"] == 625
    assert abs(rep["lower_bound"] - 0.747672) < 1e-5 and abs(rep["upper_bound"] - 1.44786) < 1e-4
    assert rep["reconstruction_error"] < 1e-9
    assert read_matrix(tmp_path / rep["dual_window"]).shape == (15, 15)


def test_frame_full_lattice_is_tight(tmp_path):
    assert main(["frame", "--n", "5", "--out", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "frame-N5-a1-b1.json").read_text())["tight"]


def test_not_a_frame_exits_1(tmp_path):
    assert main(["frame", "--n", "5", "--lattice", "5,5", "--out", str(tmp_path)]) == 1
    rep = json.loads((tmp_path / "frame-N5-a5-b5.json").read_text())
    assert rep["frame"] is False and abs(rep["smallest_eigenvalue"]) < 1e-9


def test_bad_lattice_exits_2(tmp_path):
    assert main(["frame", "--n", "15", "--lattice", "4,3", "--out", str(tmp_path)]) == 2


def test_norm_command(tmp_path, cvec, capsys):
    T = cvec(5, 5)
    write_matrix(tmp_path / "t.csv", T)
    assert main(["norm", str(tmp_path / "t.csv"), "--out", str(tmp_path), "--name", "n"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert abs(rep["norm"] - np.linalg.norm(T)) < 1e-10
    assert json.loads((tmp_path / "n.json").read_text()) == rep
    assert main(["norm", str(tmp_path / "t.csv"), "--p", "1", "--q", "inf", "--weight", "poly:1"]) == 0
    assert json.loads(capsys.readouterr().out)["q"] == "inf"
    assert main(["norm", str(tmp_path / "t.csv"), "--weight", "exp:2"]) == 2


def test_inclusion_command(tmp_path, capsys):
    argv = ["inclusion", "--n", "5", "--p", "2", "--q", "2", "--draws", "5", "--out", str(tmp_path)]
    assert main(argv) == 0
    rep = json.loads(capsys.readouterr().out)
    assert abs(rep["min"] - 1) < 1e-9 and abs(rep["max"] - 1) < 1e-9
    assert (tmp_path / "inclusion-N5-p2-q2.json").exists()
