import json
import math
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from darkport import ConfigError, ExperimentConfig, run_experiment
from darkport.cli import main
from darkport.experiments import (
    config_from_dict,
    db_to_linear,
    linear_to_db,
    load_config,
)


def tiny_config(**overrides) -> ExperimentConfig:
    base = dict(
        mode="parity-sweep",
        snr_db=(30.0,),
        n_th=50.0,
        extinction_db=90.0,
        phase_points=15,
        n_samples=40,
        repeats=4,
        seed=77,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def write_config(path: Path, config: ExperimentConfig) -> Path:
    path.write_text(json.dumps(config.semantic_dict() | {"workers": config.workers}))
    return path


def test_db_conversions_roundtrip():
    assert db_to_linear(30.0) == pytest.approx(1000.0)
    assert linear_to_db(100.0) == pytest.approx(20.0)
    for db in (-10.0, 0.0, 14.8, 56.1):
        assert linear_to_db(db_to_linear(db)) == pytest.approx(db, abs=1e-12)


def test_config_from_dict_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        config_from_dict({"mode": "roc", "unexpected_knob": 3})


def test_config_from_dict_converts_sequences():
    config = config_from_dict(
        {"snr_db": [10.0, 20.0], "phase_grid": [-0.1, 0.1, 21]}
    )
    assert config.snr_db == (10.0, 20.0)
    assert config.phase_grid == (-0.1, 0.1, 21)


def test_validate_reports_each_violation():
    bad = tiny_config(
        mode="bogus", n_samples=0, repeats=0, error_model="nope", seed=-1
    )
    problems = bad.validate()
    text = "\n".join(problems)
    assert "mode" in text
    assert "n_samples" in text
    assert "repeats" in text
    assert "error_model" in text
    assert "seed" in text


def test_config_hash_tracks_semantics_only():
    a = tiny_config()
    b = tiny_config(workers=8)
    c = tiny_config(seed=78)
    assert a.config_hash() == b.config_hash()
    assert a.config_hash() != c.config_hash()


def test_run_experiment_rejects_invalid_config(tmp_path):
    with pytest.raises(ConfigError):
        run_experiment(tiny_config(repeats=0), out_root=tmp_path)


def test_parity_sweep_run_writes_tables(tmp_path):
    manifest = run_experiment(tiny_config(), out_root=tmp_path, flat=True)
    directory = Path(manifest.output_directory)
    assert directory.exists()
    assert (directory / "manifest.json").exists()
    assert manifest.outputs
    for name in manifest.outputs:
        assert (directory / name).exists()
    on_disk = json.loads((directory / "manifest.json").read_text())
    assert on_disk["mode"] == "parity-sweep"
    assert on_disk["seed"] == 77
    assert on_disk["config_sha256"] == tiny_config().config_hash()
    assert sorted(on_disk["outputs"]) == sorted(manifest.outputs)
    # fitted feature parameters land in the summary
    assert "fits" in manifest.summary or manifest.summary


def test_parity_sweep_tables_parse_and_match_grid(tmp_path):
    config = tiny_config()
    manifest = run_experiment(config, out_root=tmp_path, flat=True)
    directory = Path(manifest.output_directory)
    sweep_files = [n for n in manifest.outputs if n.startswith("sweep_")]
    assert sweep_files
    data = np.genfromtxt(directory / sweep_files[0], delimiter=",", names=True)
    assert data.shape[0] == config.phase_points
    assert np.all(np.isfinite(data["parity"]))


def test_tradeoff_run(tmp_path):
    config = tiny_config(mode="tradeoff", tradeoff_a_grid=(0.5, 6.0, 25))
    manifest = run_experiment(config, out_root=tmp_path, flat=True)
    assert any("tradeoff" in n for n in manifest.outputs)
    assert "crossing_a_over_sigma" in manifest.summary
    assert manifest.summary["crossing_a_over_sigma"] == pytest.approx(1.704, abs=0.05)


def test_roc_run(tmp_path):
    config = tiny_config(mode="roc", roc_a_grid=(0.0, 10.0, 101))
    manifest = run_experiment(config, out_root=tmp_path, flat=True)
    directory = Path(manifest.output_directory)
    assert len([n for n in manifest.outputs if n.startswith("roc_")]) == 3
    aucs = manifest.summary["auc_by_ad_over_cr"]
    values = [aucs[k] for k in sorted(aucs, key=float)]
    assert values == sorted(values)
    first = np.genfromtxt(directory / manifest.outputs[0], delimiter=",", names=True)
    assert set(first.dtype.names) >= {"a_over_sigma", "fpr", "tpr"}


def test_integration_time_run(tmp_path):
    config = tiny_config(
        mode="integration-time",
        snr_db=(30.0,),
        t_over_tref=(1.0, 4.0, 16.0, 64.0, 1e6, 4e6),
    )
    manifest = run_experiment(config, out_root=tmp_path, flat=True)
    directory = Path(manifest.output_directory)
    data = np.genfromtxt(
        directory / "integration_time_30dB.csv", delimiter=",", names=True
    )
    # resolution narrows like one over the square root of integration time
    from darkport import loglog_slope

    slope = loglog_slope(data["t_over_tref"][:4], data["fwhm_rad"][:4])
    assert slope == pytest.approx(-0.5, abs=0.01)
    # by t/t_ref = 4e6 the leaked carrier passes the thermal occupation
    assert manifest.summary["leak_reaches_n_th_at_t_over_tref_30dB"] <= 4e6


def test_timeseries_demo_run(tmp_path):
    config = tiny_config(mode="timeseries-demo", n_samples=16)
    manifest = run_experiment(config, out_root=tmp_path, flat=True)
    directory = Path(manifest.output_directory)
    names = set(manifest.outputs)
    assert any("timeseries" in n for n in names)
    assert any("iq" in n for n in names)
    for name in names:
        assert (directory / name).exists()


def test_sensitivity_run(tmp_path):
    config = tiny_config(
        mode="sensitivity", snr_db=(30.0,), phase_points=21, n_samples=60, repeats=6
    )
    manifest = run_experiment(config, out_root=tmp_path, flat=True)
    assert any("sensitivity" in n for n in manifest.outputs)
    best = manifest.summary["min_sensitivity_30dB"]
    # tiny statistics here, so only structure is checked; calibrated
    # statistical agreement lives in the acceptance tests
    assert set(best) == {"phase_rad", "delta_phi_per_sample", "over_cr_bound"}
    assert 0.0 < best["delta_phi_per_sample"] < math.inf


def test_cli_run_and_validate_success(tmp_path):
    config_path = write_config(tmp_path / "config.json", tiny_config())
    assert main(["validate", "--config", str(config_path)]) == 0
    out_dir = tmp_path / "runs"
    code = main(
        ["run", "--config", str(config_path), "--out", str(out_dir), "--flat"]
    )
    assert code == 0
    assert (out_dir / "manifest.json").exists()


def test_cli_config_errors_exit_2(tmp_path):
    missing = tmp_path / "nope.json"
    assert main(["run", "--config", str(missing)]) == 2
    bad_json = tmp_path / "broken.json"
    bad_json.write_text("{not json")
    assert main(["run", "--config", str(bad_json)]) == 2
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"mode": "parity-sweep", "bogus_key": 1}))
    assert main(["run", "--config", str(unknown)]) == 2
    invalid = tmp_path / "invalid.json"
    invalid.write_text(json.dumps({"mode": "parity-sweep", "repeats": 0}))
    assert main(["validate", "--config", str(invalid)]) == 2
    assert main(["run", "--config", str(invalid), "--out", str(tmp_path)]) == 2


def test_cli_fit_failure_exits_3(tmp_path):
    # a phase grid pinned far inside the feature cannot seed the fit
    config = tiny_config(phase_grid=(-1e-6, 1e-6, 5))
    config_path = write_config(tmp_path / "narrow.json", config)
    code = main(
        ["run", "--config", str(config_path), "--out", str(tmp_path / "r"), "--flat"]
    )
    assert code == 3


def test_cli_seed_override(tmp_path):
    config_path = write_config(tmp_path / "config.json", tiny_config())
    out_dir = tmp_path / "runs"
    assert main(
        ["run", "--config", str(config_path), "--out", str(out_dir), "--flat",
         "--seed", "99"]
    ) == 0
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert manifest["seed"] == 99
    assert main(["run", "--config", str(config_path), "--seed", "-5"]) == 2


def test_output_root_environment_variable(tmp_path):
    config = tiny_config(mode="tradeoff", tradeoff_a_grid=(0.5, 4.0, 9))
    config_path = write_config(tmp_path / "config.json", config)
    env = os.environ.copy()
    env["DARKPORT_OUTPUT_ROOT"] = str(tmp_path / "env-root")
    out = subprocess.run(
        [sys.executable, "-m", "darkport.cli", "run", "--config",
         str(config_path)],
        capture_output=True, text=True, env=env, cwd=tmp_path,
    )
    assert out.returncode == 0, out.stderr
    # without --flat the run gets a timestamped directory under <root>/<mode>
    found = list((tmp_path / "env-root" / "tradeoff").glob("*/manifest.json"))
    assert len(found) == 1


def test_load_config_roundtrip(tmp_path):
    config = tiny_config(mode="roc")
    path = write_config(tmp_path / "c.json", config)
    loaded = load_config(path)
    assert loaded.mode == "roc"
    assert loaded.snr_db == config.snr_db
    assert loaded.config_hash() == config.config_hash()


def test_workers_do_not_change_written_tables(tmp_path):
    config_path = write_config(tmp_path / "config.json", tiny_config())
    for label, workers in (("one", "1"), ("four", "4")):
        assert main(
            ["run", "--config", str(config_path), "--out",
             str(tmp_path / label), "--flat", "--workers", workers]
        ) == 0
    csvs = [n for n in sorted(os.listdir(tmp_path / "one")) if n.endswith(".csv")]
    assert csvs
    for name in csvs:
        a = (tmp_path / "one" / name).read_bytes()
        b = (tmp_path / "four" / name).read_bytes()
        assert a == b, name
