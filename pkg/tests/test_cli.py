import json
import subprocess
import sys

import pytest

from calogero_exact.cli import EXIT_CAP, EXIT_DEGENERATE, EXIT_OK, EXIT_PARTIAL, main, parse_nu


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_parse_nu():
    assert parse_nu("4") == [4]
    assert parse_nu("2:6") == [2, 3, 4, 5, 6]
    assert parse_nu("2:10:4") == [2, 6, 10]
    for bad in ("0", "x", "3:1", "1:2:3:4", "2:8:0"):
        with pytest.raises(Exception):
            parse_nu(bad)


def test_energy(capsys):
    assert run(capsys, "energy", "--N", "3", "--nu", "2") == (EXIT_OK, "15/2\n")
    code, out = run(capsys, "energy", "--N", "2", "--nu", "2:3", "--format", "json")
    assert [json.loads(line)["energy"] for line in out.splitlines()] == ["3", "4"]


def test_spectrum_record(capsys):
    code, out = run(capsys, "spectrum", "--N", "2", "--nu", "2")
    rec = json.loads(out)
    assert code == EXIT_OK
    assert rec["L"].startswith("0.5000000000")
    assert rec["S"].startswith("1.154681769164669")
    assert len(rec["eigenvalues"]) == 3 and rec["degeneracy_flag"] is False


def test_spectrum_degenerate_exit(capsys):
    code, out = run(capsys, "spectrum", "--N", "2", "--nu", "3")
    assert code == EXIT_DEGENERATE
    rec = json.loads(out)
    assert rec["Q"] is None and rec["degeneracy_flag"] is True


def test_cap_exit(capsys):
    code, out = run(capsys, "spectrum", "--N", "6", "--nu", "12", "--cap", "1000")
    assert code == EXIT_CAP and out == ""


def test_rdm_formats(capsys):
    code, out = run(capsys, "rdm", "--N", "2", "--nu", "3", "--format", "exact")
    assert "1 3 [0] [2] 3/20*sqrt(2)" in out
    code, out = run(capsys, "rdm", "--N", "2", "--nu", "2")
    assert json.loads(out)["entries"][0] == {"i": 1, "j": 1, "value": ["1", "2", "1"]}


def test_density_csv(capsys):
    code, out = run(capsys, "density", "--N", "2", "--nu", "2", "--points", "101", "--digits", "20")
    lines = out.splitlines()
    assert lines[0].startswith("# calogero-exact N=2 nu=2 p=1")
    assert lines[1] == "# peaks=2" and lines[2] == "x,rho"
    assert len(lines) == 3 + 101


def test_identical_across_workers_and_cache(capsys, tmp_path):
    args = ["spectrum", "--N", "3", "--nu", "1:6", "--digits", "30"]
    _, serial = run(capsys, *args, "--workers", "1")
    _, parallel = run(capsys, *args, "--workers", "3")
    _, cold = run(capsys, *args, "--workers", "2", "--cache-dir", str(tmp_path))
    _, warm = run(capsys, *args, "--workers", "2", "--cache-dir", str(tmp_path))
    assert serial == parallel == cold == warm
    assert len(serial.splitlines()) == 6


def test_figure_identical_across_workers(capsys):
    args = ["figure", "fig6", "--n-max", "4", "--digits", "30"]
    _, a = run(capsys, *args, "--workers", "1")
    _, b = run(capsys, *args, "--workers", "2")
    assert a == b
    assert a.splitlines()[2] == "n,S_boson,S_fermion,difference"


def test_figure_partial_exit(capsys):
    code, out = run(capsys, "figure", "fig5a", "--n-max", "2", "--cap", "2000", "--digits", "20")
    assert code == EXIT_PARTIAL
    assert "stopped at resource cap" in out


def test_cache_commands(capsys, tmp_path):
    run(capsys, "rdm", "--N", "2", "--nu", "2", "--cache-dir", str(tmp_path))
    code, out = run(capsys, "cache", "list", "--cache-dir", str(tmp_path))
    assert out.splitlines() == ["rdm N=2 nu=2 p=1", "tensor N=2 nu=2"]
    code, out = run(capsys, "cache", "clear", "--cache-dir", str(tmp_path))
    assert out == "removed 2 cache files\n"


def test_output_file(capsys, tmp_path):
    target = tmp_path / "e.txt"
    assert main(["energy", "--N", "2", "--nu", "3", "-o", str(target)]) == EXIT_OK
    assert target.read_text() == "4\n"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "calogero_exact", "energy", "--N", "4", "--nu", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "8\n"
