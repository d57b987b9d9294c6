import csv
import io
import json
import math
import subprocess
import sys

import pytest

from emduality.cli import (
    EXIT_CONFIG,
    EXIT_GATE,
    EXIT_OK,
    EXIT_UNSUPPORTED,
    SCHEMA_VERSION,
    ConfigError,
    fmt,
    main,
    parse_range,
    read_config_file,
    render_csv,
    to_json,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows_of(text):
    return list(csv.reader(io.StringIO(text)))


# --- helpers ---------------------------------------------------------------------------------


def test_parse_range():
    r = parse_range("0.1:10:5", "x")
    assert (r.lo, r.hi, r.n) == (0.1, 10.0, 5)
    assert parse_range("-5:5:3", "t", positive=False).linear().tolist() == [-5.0, 0.0, 5.0]
    for bad in ("1:2", "2:1:5", "0:1:5", "1:2:1", "a:b:c", "1:inf:3"):
        with pytest.raises(ConfigError):
            parse_range(bad, "x")


def test_fmt_and_json():
    assert fmt(0.1) == "0.10000000000000001"
    assert fmt(math.nan) == ""
    assert fmt(True) == "true"
    assert fmt(3) == "3"
    assert json.loads(to_json({"a": [1.5, math.inf], "b": {"c": None}})) == {"a": [1.5, None], "b": {"c": None}}
    assert render_csv(("x", "y"), [(1, 2.5)]) == "x,y\n1,2.5\n"


def test_config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# comment\ntraj = df\ns = 0.5  # inline\nomega-range = 0.1:1:3\n")
    assert read_config_file(path) == {"traj": "df", "s": "0.5", "omega_range": "0.1:1:3"}
    path.write_text("colour = blue\n")
    with pytest.raises(ConfigError):
        read_config_file(path)


# --- exit codes ------------------------------------------------------------------------------


def test_exit_ok(capsys):
    code, out, _ = run(capsys, "trajectory", "--traj", "df", "--s", "0.5", "--t-range=-1:1:3")
    assert code == EXIT_OK
    assert rows_of(out)[0] == ["t", "z", "v", "eta", "gamma", "alpha", "peel", "jerk_sq"]


@pytest.mark.parametrize("argv", [
    ["trajectory", "--traj", "df"],
    ["trajectory", "--traj", "df", "--s", "1.5"],
    ["spectrum", "--traj", "df", "--s", "0.5", "--omega-range", "1:0.5:3"],
    ["spectrum", "--traj", "uniform", "--theta-range", "0:4:3"],
    ["trajectory", "--traj", "warp"],
    ["particles", "--traj", "wd"],
])
def test_exit_config(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_CONFIG
    assert err


def test_exit_gate(capsys):
    code, out, err = run(capsys, "duality-check", "--traj", "df", "--s", "0.5", "--omega-range", "0.5:5:4",
                         "--theta-range", "0.3:2.8:4", "--gate", "1e-20")
    assert code == EXIT_GATE
    assert "gate failed" in err
    assert "max_rel_diff" in out


@pytest.mark.parametrize("argv", [
    ["energy", "--traj", "uniform"],
    ["energy", "--traj", "cw"],
    ["spectrum", "--traj", "cw"],
    ["particles", "--traj", "df", "--s", "0.5"],
])
def test_exit_unsupported(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_UNSUPPORTED
    assert "unsupported" in err


# --- configuration precedence --------------------------------------------------------------------


def test_flags_override_config(tmp_path, capsys):
    path = tmp_path / "run.cfg"
    path.write_text("traj = df\ns = 0.5\nt-range = 0:1:2\nformat = json\n")
    code, out, _ = run(capsys, "trajectory", "--config", str(path))
    assert code == EXIT_OK
    assert json.loads(out)["trajectory"]["s"] == 0.5
    code, out, _ = run(capsys, "trajectory", "--config", str(path), "--s", "0.25")
    assert json.loads(out)["trajectory"]["s"] == 0.25


def test_unknown_config_key(tmp_path, capsys):
    path = tmp_path / "run.cfg"
    path.write_text("speed = 0.5\n")
    code, _, _ = run(capsys, "trajectory", "--traj", "df", "--s", "0.5", "--config", str(path))
    assert code == EXIT_CONFIG


# --- outputs ---------------------------------------------------------------------------------


def test_output_deterministic(tmp_path):
    argv = ["spectrum", "--traj", "wd", "--A", "2", "--B", "1", "--omega-range", "0.1:5:6",
            "--theta-range", "0.3:2.8:5", "--format", "json"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + ["--out", str(a)]) == EXIT_OK
    assert main(argv + ["--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_json_envelope(capsys):
    code, out, _ = run(capsys, "spectrum", "--traj", "df", "--s", "0.5", "--omega-range", "0.1:1:3",
                       "--theta-range", "0.5:2.5:3", "--format", "json", "--e2", "2")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["schema_version"] == SCHEMA_VERSION
    assert doc["command"] == "spectrum"
    assert doc["units"]["e2_prefactor"] == 2.0
    assert doc["columns"] == ["omega", "cos_theta", "value", "method"]
    assert len(doc["rows"]) == 9


def test_spectrum_csv_and_e2(capsys):
    base = ["spectrum", "--traj", "df", "--s", "0.5", "--omega-range", "0.1:1:3", "--theta-range", "0.5:2.5:3"]
    _, one, _ = run(capsys, *base)
    _, two, _ = run(capsys, *base, "--e2", "2")
    r1, r2 = rows_of(one), rows_of(two)
    assert r1[0] == ["omega", "cos_theta", "value", "method"]
    assert len(r1) == 10
    for a, b in zip(r1[1:], r2[1:]):
        assert float(b[2]) == pytest.approx(2 * float(a[2]), rel=1e-15)


def test_spectrum_both_methods(capsys):
    code, out, _ = run(capsys, "spectrum", "--traj", "uniform", "--method", "both", "--omega-range", "0.2:4:4",
                       "--theta-range", "0:3.141592653589793:5")
    rows = rows_of(out)
    assert code == EXIT_OK
    assert rows[0] == ["omega", "cos_theta", "recipe", "closed_form", "rel_diff"]
    # the poles are empty cells, every other point agrees
    empty = [r for r in rows[1:] if r[2] == ""]
    assert len(empty) == 8
    assert all(float(r[4]) < 1e-9 for r in rows[1:] if r[2] != "")


def test_trajectory_cw_uses_proper_time(capsys):
    code, out, _ = run(capsys, "trajectory", "--traj", "cw", "--t-range", "0.5:2:4", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["parameter"] == "proper time tau"
    peel = doc["columns"].index("peel")
    assert all(row[peel] == 1.0 for row in doc["rows"])


def test_duality_check(capsys):
    code, out, _ = run(capsys, "duality-check", "--traj", "wd", "--vmax", "0.3", "--omega-range", "0.2:5:5",
                       "--theta-range", "0.3:2.8:5", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["passed"] and doc["max_rel_diff"] < 1e-9 and doc["n_points"] == 25


def test_beta_uniform_level_sets(capsys):
    code, out, _ = run(capsys, "beta", "--traj", "uniform", "--pq-range", "0.5:2:4", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    by_pq = {}
    for p, q, value, _ in doc["rows"]:
        by_pq.setdefault(round(p * q, 12), []).append(value)
    # the uniform spectrum depends on p q only
    for values in by_pq.values():
        assert max(values) == pytest.approx(min(values), rel=1e-12)


def test_particles_json(capsys):
    code, out, _ = run(capsys, "particles", "--traj", "wd", "--A", "2", "--B", "0.02", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert len(doc["p_grid"]) == len(doc["n_p"]) == 6
    assert doc["n_tot"] == pytest.approx(doc["n_tot_closed_form"], rel=1e-2)


def test_thermal_df(capsys):
    code, out, _ = run(capsys, "thermal", "--traj", "df", "--s", "0.99", "--theta", "0.01", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["verdict"] == "thermal"
    assert doc["mirror_reference"]["scale"] == "kelvin"


def test_thermal_uniform_sweep(capsys):
    code, out, _ = run(capsys, "thermal", "--traj", "uniform", "--theta-range", "0.2:1.5:4")
    rows = rows_of(out)
    assert code == EXIT_OK
    assert rows[0] == ["theta", "T_uv", "T_uv_sin_theta"]
    assert all(float(r[2]) == pytest.approx(0.5, rel=0.05) for r in rows[1:])


def test_energy_df(capsys):
    code, out, _ = run(capsys, "energy", "--traj", "df", "--s", "0.5", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["passed"]
    assert max(doc["pairwise_relative_differences"].values()) < 1e-3


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "emduality.cli", "trajectory", "--traj", "uniform",
                           "--t-range=-1:1:3"], capture_output=True, text=True, check=False)
    assert proc.returncode == EXIT_OK
    assert proc.stdout.startswith("t,z,v")
