import json
import math
from pathlib import Path

import numpy as np
import pytest

from lymanfield.cli import main
from lymanfield.config import ConfigError, parse_config

SYNTH_FIELD = """\
mode = field
preset = synthetic
A = 0.05
B = 0.3
p = 5
r_grid = logspace(1e2,1e4,25)
"""


def test_parse_valid_decay():
    cfg = parse_config("mode = decay\npreset = hydrogen\nm_e = 0\n")
    assert cfg.mode == "decay"
    assert cfg.preset == "hydrogen"
    assert cfg.m_e == 0


def test_parse_override_conflict():
    with pytest.raises(ConfigError, match="forbids"):
        parse_config("mode = decay\npreset = hydrogen\nA = 0.05\n")


def test_parse_valid_field():
    cfg = parse_config(SYNTH_FIELD)
    assert cfg.mode == "field"
    assert cfg.r_grid is not None and len(cfg.r_grid) == 25
    assert cfg.r_grid[0] == pytest.approx(1e2)
    assert cfg.r_grid[-1] == pytest.approx(1e4)


def test_parse_rejections():
    with pytest.raises(ConfigError, match="missing required key 'mode'"):
        parse_config("preset = hydrogen\n")
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config("mode = decay\npreset = hydrogen\ncolor = red\n")
    with pytest.raises(ConfigError, match="repeated key"):
        parse_config("mode = decay\nmode = decay\npreset = hydrogen\n")
    with pytest.raises(ConfigError, match="malformed number"):
        parse_config("mode = decay\npreset = synthetic\nA = abc\nB = 0.3\n")
    with pytest.raises(ConfigError, match="requires explicit A and B"):
        parse_config("mode = decay\npreset = synthetic\n")
    with pytest.raises(ConfigError, match="unknown mode"):
        parse_config("mode = fly\npreset = hydrogen\n")
    with pytest.raises(ConfigError, match="requires 'p'"):
        parse_config("mode = field\npreset = synthetic\nA = 0.1\nB = 0.3\nr = 5\n")


def test_parse_comments_and_lists():
    cfg = parse_config(
        "# a run\nmode = angular  # trailing comment\npreset = hydrogen\n"
        "theta_grid = 0.1, 0.2, 0.3\n"
    )
    assert np.allclose(cfg.theta_grid, [0.1, 0.2, 0.3])


def _run_cli(tmp_path, config_text, name, extra=()):
    cfg_path = tmp_path / f"{name}.cfg"
    cfg_path.write_text(config_text)
    out = tmp_path / f"{name}.csv"
    rc = main(["--config", str(cfg_path), "--out", str(out), *extra])
    return rc, out


def test_angular_mode(tmp_path):
    rc, out = _run_cli(
        tmp_path, "mode = angular\npreset = hydrogen\nm_e = 0\n", "ang",
        extra=("--no-plot",),
    )
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "theta_rad,gamma"
    assert len(lines) == 26
    # theta = pi/2 row carries gamma = 1 for m_e = 0
    mid = lines[13].split(",")
    assert float(mid[0]) == pytest.approx(math.pi / 2.0)
    assert float(mid[1]) == pytest.approx(1.0)
    meta = Path(str(out) + ".meta").read_text()
    assert "config_sha256 = " in meta


def test_csv_number_format(tmp_path):
    rc, out = _run_cli(
        tmp_path, "mode = angular\npreset = hydrogen\nm_e = 1\n", "fmt",
        extra=("--no-plot",),
    )
    assert rc == 0
    row = out.read_text().splitlines()[1].split(",")
    # 17 significant digits, scientific notation
    for cell in row:
        mantissa, exponent = cell.split("e")
        assert len(mantissa.replace("-", "").replace(".", "")) == 17


def test_field_mode_synthetic(tmp_path):
    cfg = "mode = field\npreset = synthetic\nA = 0.05\nB = 0.3\np = 5\nr_grid = 20,40\n"
    rc, out = _run_cli(tmp_path, cfg, "field")
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("r_scaled,theta_rad,phi_rad,t_scaled,density")
    assert len(lines) == 3
    assert all(line.endswith("ok") for line in lines[1:])
    assert (tmp_path / "field.png").exists()


def test_determinism_and_cache(tmp_path):
    cfg = "mode = decay\npreset = hydrogen\nt_grid = linspace(0, 3e-9, 4)\n"
    cache = tmp_path / "cache.json"
    rc1, out1 = _run_cli(tmp_path, cfg, "cold", extra=("--cache", str(cache), "--no-plot"))
    assert rc1 == 0
    assert cache.exists()
    payload = json.loads(cache.read_text())
    assert "hydrogen" in payload and "gamma_a" in payload["hydrogen"]
    rc2, out2 = _run_cli(tmp_path, cfg, "warm", extra=("--cache", str(cache), "--no-plot"))
    assert rc2 == 0
    assert out1.read_text() == out2.read_text()
    # no cache at all gives the same science columns
    rc3, out3 = _run_cli(tmp_path, cfg, "nocache", extra=("--no-plot",))
    assert rc3 == 0
    assert out1.read_text() == out3.read_text()


def test_asymptotics_mode(tmp_path):
    cfg = (
        "mode = asymptotics\npreset = synthetic\nA = 0.05\nB = 0.3\np = 5\n"
        "r_grid = logspace(1e3,1e5,9)\n"
    )
    rc, out = _run_cli(tmp_path, cfg, "asym")
    assert rc == 0
    meta = Path(str(out) + ".meta").read_text()
    fit_line = [ln for ln in meta.splitlines() if ln.startswith("fit_exponent")][0]
    exponent = float(fit_line.split("=")[1])
    assert exponent == pytest.approx(-6.0, abs=0.1)
    assert (tmp_path / "asym.png").exists()


def test_spectrum_mode_synthetic(tmp_path):
    cfg = (
        "mode = spectrum\npreset = synthetic\nA = 0.01\nB = 0.3\n"
        "omega_grid = linspace(0.05, 0.6, 12)\n"
    )
    rc, out = _run_cli(tmp_path, cfg, "spec", extra=("--no-plot",))
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "omega_scaled,gamma_scaled,delta_scaled,g_inv_scaled,g_weak_inv_scaled"
    data = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
    assert np.all(data[:, 1] >= 0.0)
    assert np.all(data[:, 3] >= 0.0)


@pytest.mark.slow
def test_validate_mode_hydrogen(tmp_path):
    rc, out = _run_cli(
        tmp_path, "mode = validate\npreset = hydrogen\n", "val",
        extra=("--no-plot",),
    )
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "check,status,detail"
    assert len(lines) > 10
    assert all(line.split(",")[1] == "pass" for line in lines[1:])


def test_field_mode_threads(tmp_path):
    cfg = "mode = field\npreset = synthetic\nA = 0.05\nB = 0.3\np = 5\nr_grid = 20,40\n"
    rc1, out1 = _run_cli(tmp_path, cfg, "st", extra=("--no-plot",))
    rc2, out2 = _run_cli(tmp_path, cfg, "mt", extra=("--no-plot", "--threads", "2"))
    assert rc1 == rc2 == 0
    assert out1.read_text() == out2.read_text()


def test_missing_config_file(tmp_path):
    rc = main(["--config", str(tmp_path / "absent.cfg")])
    assert rc == 2


def test_bad_config_exit_code(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("mode = decay\n")
    rc = main(["--config", str(path)])
    assert rc == 2
