import json
import math

import numpy as np
import pytest

from fluxring.cli import main, parse_angle, parse_grid, parse_horizon
from fluxring.errors import ConfigError
from fluxring.io import read_sweep_csv, read_threshold_csv
from fluxring.ring import RingConfig


def test_parse_angle():
    assert parse_angle("pi/2") == math.pi / 2
    assert parse_angle("0.765pi") == 0.765 * math.pi
    assert parse_angle("3pi/8") == 3 * math.pi / 8
    assert parse_angle("-pi") == -math.pi
    assert parse_angle("2pi") == 2 * math.pi
    assert parse_angle("1.5") == 1.5
    assert parse_angle("0") == 0.0
    with pytest.raises(ConfigError):
        parse_angle("two pies")


def test_parse_grid():
    g = parse_grid("0:pi:pi/100")
    assert len(g) == 101
    assert g[0] == 0.0 and g[-1] == math.pi
    g = parse_grid("log:0.01:3:60")
    assert len(g) == 60
    assert g[0] == pytest.approx(0.01) and g[-1] == pytest.approx(3.0)
    g = parse_grid("1:50:1")
    assert len(g) == 50 and g[0] == 1.0 and g[-1] == 50.0
    g = parse_grid("pi/8,pi/4,3pi/8")
    assert np.allclose(g, [math.pi / 8, math.pi / 4, 3 * math.pi / 8])
    g = parse_grid("lin:0:1:5")
    assert np.allclose(g, [0, 0.25, 0.5, 0.75, 1.0])


def test_parse_horizon():
    cfg = RingConfig(200, hopping=2.0)
    assert parse_horizon("25N", cfg) == 25 * 200 / 2.0
    assert parse_horizon("12.5", cfg) == 12.5


def test_bessel_zero_command(capsys):
    assert main(["bessel", "--zero", "1"]) == 0
    assert capsys.readouterr().out.strip() == "2.404825557695773"
    assert main(["bessel", "--order", "0", "--x", "0"]) == 0
    assert capsys.readouterr().out.strip() == "1.0"


def test_bessel_usage_error(capsys):
    assert main(["bessel"]) == 2


def test_sweep_writes_artifact(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    rc = main(
        [
            "sweep", "--waveform", "square", "--state", "single-site:l=1",
            "--n", "16", "--amp", "0:pi/2:pi/4", "--freq", "log:0.5:2:3",
            "--T", "2N", "--out", str(out),
        ]
    )
    assert rc == 0
    grid = read_sweep_csv(out)
    assert grid.values.shape == (3, 3)
    assert grid.metadata["waveform"] == "square"
    assert grid.metadata["N"] == "16"
    assert grid.metadata["state"] == "single-site:l=1"
    first = out.read_text().splitlines()[0]
    assert first.startswith("# waveform=square N=16 J=")
    assert "state=single-site:l=1" in first


def test_sweep_roundtrip_byte_identical(tmp_path):
    args = [
        "sweep", "--waveform", "sine", "--state", "gaussian:k0=0,alpha=4",
        "--n", "16", "--amp", "0:pi/2:pi/4", "--freq", "log:0.5:2:3",
        "--T", "2N",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    meta = read_sweep_csv(a).metadata
    # reconstruct the run from the artifact metadata alone
    rerun = [
        "sweep", "--waveform", meta["waveform"], "--state", meta["state"],
        "--n", meta["N"], "--j", meta["J"], "--phi0", meta["phi0"],
        "--amp", "0:pi/2:pi/4", "--freq", "log:0.5:2:3", "--T", meta["T"],
        "--steps-per-period", meta["steps_per_period"],
        "--coarse-dt", meta["coarse_dt"],
    ]
    assert main(rerun + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_curve_command(tmp_path):
    out = tmp_path / "curve.csv"
    rc = main(
        [
            "curve", "--waveform", "square", "--state", "single-site:l=1",
            "--n", "16", "--freq", "log:0.5:2:2", "--T", "2N", "--out", str(out),
        ]
    )
    assert rc == 0
    grid = read_sweep_csv(out)
    assert grid.values.shape == (7, 2)  # standard amplitude set


def test_threshold_command(tmp_path):
    out = tmp_path / "thr.csv"
    rc = main(
        [
            "threshold", "--alphas", "5,10", "--target", "0.9", "--tol", "0.01",
            "--waveform", "square", "--amp", "pi/2", "--n", "64",
            "--T", "10N", "--out", str(out),
        ]
    )
    assert rc == 0
    curves = read_threshold_csv(out)
    assert {c.source for c in curves} == {"numeric", "theory"}
    for c in curves:
        assert np.all(np.diff(c.nu_values) < 0)


def test_fidelity_series_command(tmp_path):
    out = tmp_path / "series.csv"
    rc = main(
        [
            "fidelity", "--waveform", "sine", "--amp", "1.0", "--freq", "1.0",
            "--state", "single-site:l=1", "--n", "16", "--T", "5", "--out", str(out),
        ]
    )
    assert rc == 0
    lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert lines[0] == "t,F,running_average"
    first = lines[1].split(",")
    assert float(first[0]) == 0.0 and float(first[1]) == 1.0


def test_evolve_command_site_basis(tmp_path):
    out = tmp_path / "state.csv"
    rc = main(
        [
            "evolve", "--waveform", "constant", "--state", "single-site:l=3",
            "--n", "8", "--t", "0", "--basis", "site", "--out", str(out),
        ]
    )
    assert rc == 0
    rows = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert rows[0] == "index,re,im"
    amp = np.array([complex(float(r.split(",")[1]), float(r.split(",")[2]))
                    for r in rows[1:]])
    assert abs(amp[2]) == pytest.approx(1.0, abs=1e-12)


def test_config_file_defaults_and_override(tmp_path):
    cfgfile = tmp_path / "run.json"
    cfgfile.write_text(json.dumps({"n": 16, "T": "2N", "waveform": "square"}))
    out = tmp_path / "s.csv"
    rc = main(
        [
            "sweep", "--config", str(cfgfile), "--state", "single-site:l=1",
            "--amp", "0:pi/2:pi/2", "--freq", "1.0", "--n", "8",  # flag wins
            "--out", str(out),
        ]
    )
    assert rc == 0
    assert read_sweep_csv(out).metadata["N"] == "8"


def test_config_file_unknown_key(tmp_path):
    cfgfile = tmp_path / "run.json"
    cfgfile.write_text(json.dumps({"sites": 16}))
    rc = main(["sweep", "--config", str(cfgfile), "--waveform", "square",
               "--out", "x.csv"])
    assert rc == 2


def test_exit_code_config_error(tmp_path, capsys):
    rc = main(
        [
            "sweep", "--waveform", "square", "--state", "nonsense:a=1",
            "--n", "8", "--amp", "0:pi/2:pi/2", "--freq", "1.0",
            "--out", str(tmp_path / "x.csv"),
        ]
    )
    assert rc == 2
    assert "ConfigError" in capsys.readouterr().err


def test_exit_code_numerical_error(tmp_path, capsys):
    # a plane wave never drops to 0.5 average: bracketing fails -> exit 3
    rc = main(
        [
            "threshold", "--alphas", "64", "--target", "0.5", "--n", "64",
            "--T", "5N", "--out", str(tmp_path / "x.csv"),
        ]
    )
    assert rc == 3
    assert "NoBracket" in capsys.readouterr().err


def test_verify_default_passes(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "all checks passed" in out
    assert out.count("PASS") == 5


def test_verify_coarse_dt_exits_3(capsys):
    rc = main(["verify", "--dt", "0.05"])
    assert rc == 3
    assert "StepTooLarge" in capsys.readouterr().err
