import csv
import io
import json
import subprocess
import sys

import pytest

from besselwell.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def energies(out):
    return [lv["E"] for lv in json.loads(out)["levels"]]


def test_spectrum_json_schema(capsys):
    code, out, _ = invoke(capsys, "spectrum", "--family", "v5", "--v0", "50", "--a", "1", "--n", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"family", "v0", "a", "levels", "meta"}
    assert doc["family"] == "v5" and doc["v0"] == 50.0 and doc["a"] == 1.0
    assert [round(e, 3) for e in energies(out)] == [18.611, 37.263]
    for level in doc["levels"]:
        assert {"E", "parity", "condition", "residual"} <= set(level)
    assert "tolerances" in doc["meta"]


def test_default_format_is_json(capsys):
    _, out, _ = invoke(capsys, "spectrum", "--family", "v1", "--v0", "5")
    assert energies(out) == pytest.approx([6.465, 17.537], abs=1e-3)


def test_full_precision_in_files(capsys):
    _, out, _ = invoke(capsys, "spectrum", "--family", "v5", "--v0", "50", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["E", "parity", "condition", "residual"]
    assert len(rows[1][0].split(".")[1]) > 10
    assert float(rows[1][0]) == energies(invoke(capsys, "spectrum", "--family", "v5", "--v0", "50")[1])[0]


def test_scatter_csv(capsys):
    code, out, _ = invoke(capsys, "scatter", "--family", "v4", "--v0", "50", "--a", "1",
                          "--emin", "1", "--emax", "49", "--steps", "10", "--format", "csv")
    assert code == 0
    assert out.startswith("E,ReA,ImA,ReB,ImB,R,T\n") and "\r" not in out
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 11 and all(len(r) == 7 for r in rows)
    for r in rows[1:]:
        assert abs(float(r[5]) + float(r[6]) - 1.0) < 1e-8


def test_scatter_verbatim_reports_defect(capsys):
    code, out, _ = invoke(capsys, "scatter", "--family", "v2", "--v0", "5", "--emin", "1", "--emax", "2",
                          "--steps", "2", "--verbatim")
    assert code == 0
    assert all(abs(row["unitarity_defect"]) > 0.1 for row in json.loads(out)["rows"])


def test_validate(capsys):
    code, out, _ = invoke(capsys, "validate")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1].endswith("checks passed")
    passed, total = lines[-1].split()[0].split("/")
    assert passed == total
    assert all(line.startswith("PASS ") for line in lines[:-1])


def test_poles(capsys):
    _, out, _ = invoke(capsys, "poles", "--family", "v4", "--flip-sign", "--v0", "5")
    assert energies(out) == pytest.approx([6.465, 17.537], abs=1e-3)
    _, out, _ = invoke(capsys, "poles", "--family", "v2", "--flip-sign", "--v0", "50")
    assert [round(e, 3) for e in energies(out)] == [18.611, 37.263]


def test_poles_require_flip(capsys):
    code, _, err = invoke(capsys, "poles", "--family", "v4", "--v0", "5")
    assert code == 2 and "--flip-sign" in err


def test_transfer(capsys):
    code, out, _ = invoke(capsys, "transfer", "--v0", "50", "--energy", "37.263")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["det"][0] - 1.0) < 1e-9 and abs(doc["det"][1]) < 1e-9
    assert [round(c[0], 2) for c in doc["M_times_11"]] == [-1.0, -1.0]


def test_wavefunction_dump(capsys):
    code, out, _ = invoke(capsys, "wavefunction", "--family", "v4", "--v0", "50", "--parity", "odd",
                          "--points", "11", "--cosmetic-flip", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "psi"] and len(rows) == 12
    psi = [float(r[1]) for r in rows[1:]]
    assert psi == pytest.approx(psi[::-1], abs=1e-12)


def test_cubic_levels_and_wavefunction(capsys):
    _, out, _ = invoke(capsys, "cubic", "--n", "2")
    assert [round(e, 3) for e in energies(out)] == [1.023, 3.451]
    code, out, _ = invoke(capsys, "cubic", "--wavefunction", "0")
    doc = json.loads(out)
    assert code == 0 and len(doc["x"]) == len(doc["psi"]) and doc["normalized"]


def test_moments(capsys):
    code, out, err = invoke(capsys, "moments", "--family", "v5", "--v0", "50", "--observable", "x",
                            "--power", "2", "--cutoff", "8")
    assert code == 0 and err == ""
    assert json.loads(out)["value"] > 0
    _, out, _ = invoke(capsys, "moments", "--family", "v5", "--v0", "50", "--observable", "p",
                       "--power", "1", "--cutoff", "4")
    doc = json.loads(out)
    assert doc["value"] == 0.0 and "note" in doc


def test_moments_coarse_step_warns(capsys):
    code, _, err = invoke(capsys, "moments", "--family", "v4", "--v0", "50", "--observable", "p",
                          "--cutoff", "6", "--step", "0.01")
    assert code == 0 and "warning" in err


@pytest.mark.parametrize("argv", [
    ["spectrum"],
    ["spectrum", "--family", "v9"],
    ["spectrum", "--family", "v5", "--v0", "-1"],
    ["spectrum", "--family", "v5", "--n", "0"],
    ["spectrum", "--family", "v5", "--bogus"],
    ["scatter", "--family", "v5", "--emin", "1", "--emax", "2"],
    ["scatter", "--family", "v4", "--emin", "3", "--emax", "2"],
    ["wavefunction", "--family", "v5", "--xmin", "1", "--xmax", "0"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert invoke(capsys, *argv)[0] == 2


@pytest.mark.parametrize("argv", [
    ["scatter", "--family", "v4", "--v0", "50", "--emin", "10", "--emax", "60", "--steps", "3"],
    ["transfer", "--v0", "50", "--energy", "70"],
    ["spectrum", "--family=-|x|^3"],
    ["spectrum", "--family", "v1", "--nonphysical"],
    ["wavefunction", "--family", "v5", "--v0", "50", "--level", "40"],
])
def test_domain_errors_exit_1(capsys, argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 1 and out == "" and err.startswith("besselwell: error:")


def test_determinism(capsys):
    argv = ["scatter", "--family", "v2", "--v0", "5", "--emin", "0.5", "--emax", "40", "--steps", "70", "--format", "csv"]
    assert invoke(capsys, *argv)[1] == invoke(capsys, *argv)[1]


def test_threads_do_not_change_output(capsys, monkeypatch):
    argv = ["scatter", "--family", "v4", "--v0", "50", "--emin", "1", "--emax", "49", "--steps", "80"]
    monkeypatch.setenv("BESSELWELL_THREADS", "1")
    serial = invoke(capsys, *argv)[1]
    monkeypatch.setenv("BESSELWELL_THREADS", "2")
    assert invoke(capsys, *argv)[1] == serial


def test_bad_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("BESSELWELL_THREADS", "many")
    assert invoke(capsys, "spectrum", "--family", "v5", "--v0", "50")[0] == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "levels.json"
    code, out, _ = invoke(capsys, "spectrum", "--family", "v5", "--v0", "50", "--output", str(target))
    assert code == 0 and out == ""
    assert [round(e, 3) for e in energies(target.read_text())] == [18.611, 37.263]


def test_config_file_with_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# well run\nfamily = v5\nv0 = 50\nn = 3\nformat = csv\n")
    _, out, _ = invoke(capsys, "spectrum", "--config", str(cfg))
    assert len(out.strip().splitlines()) == 4
    _, out, _ = invoke(capsys, "spectrum", "--config", str(cfg), "--n", "1", "--format", "json")
    assert len(energies(out)) == 1


def test_config_errors(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("family v5\n")
    assert invoke(capsys, "spectrum", "--config", str(cfg))[0] == 2
    cfg.write_text("family = v5\nwidth = 3\n")
    assert invoke(capsys, "spectrum", "--config", str(cfg))[0] == 2
    assert invoke(capsys, "spectrum", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_verbose_goes_to_stderr(capsys):
    _, out, err = invoke(capsys, "spectrum", "--family", "v5", "--v0", "50", "--verbose")
    assert "besselwell" in err and "E0 = 18.611" in err
    assert "besselwell 0" not in out and json.loads(out)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "besselwell", "spectrum", "--family", "v5", "--v0", "50"],
                          capture_output=True, text=True, check=True)
    assert [round(e, 3) for e in energies(proc.stdout)] == [18.611, 37.263]
