"""Configured experiment runs producing figure-ready CSV tables.

This layer backs the command-line interface: it validates a JSON-friendly
configuration, executes one of the canned experiment modes, and writes the
resulting tables plus a manifest into a run directory.  Decibel quantities
(signal-to-noise ratios, extinction) live only here and in the CLI; every
library call below this module works in linear units.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from ._version import __version__
from .backend import active_backend
from .errors import ConfigError, DomainError, NoSuperResolvedFeatureError
from .estimators import ERROR_MODELS
from .homodyne import (
    AcquisitionConfig,
    ensemble_from_timeseries,
    synthesize_timeseries,
    write_iq_csv,
    write_timeseries_csv,
)
from .interferometer import InterferometerConfig, output_state, peak_parity, snr_at_time, theoretical_fwhm
from .metrology import (
    cr_bound,
    fit_parity_model,
    min_sensitivity_factor,
    ml_sensitivity_theory,
    roc_curve,
    sensitivity_from_curve,
    tradeoff_curve,
)
from .simulate import simulate_parity_sweep

MODES = (
    "parity-sweep",
    "sensitivity",
    "tradeoff",
    "roc",
    "integration-time",
    "timeseries-demo",
)

#: Environment variable naming the default output root directory.
OUTPUT_ROOT_ENV = "DARKPORT_OUTPUT_ROOT"

_DEFAULT_SNR_DB = (14.8, 26.3, 38.8, 45.9, 56.1)


def db_to_linear(db: float) -> float:
    """Power decibels to linear ratio."""
    return 10.0 ** (db / 10.0)


def linear_to_db(linear: float) -> float:
    """Linear power ratio to decibels."""
    if linear <= 0.0:
        raise DomainError(f"linear ratio must be > 0, got {linear}")
    return 10.0 * math.log10(linear)


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one experiment run depends on, JSON-serializable.

    ``snr_db`` quotes displacement signal-to-noise ratios in decibels;
    conversion to linear happens once, when the run builds its
    interferometer configs.  ``phase_grid`` is ``[min, max, points]`` in
    radians, or None to auto-scale each sweep to 1.5 feature widths either
    side of the dark fringe with ``phase_points`` points.
    """

    mode: str = "parity-sweep"
    snr_db: tuple[float, ...] = _DEFAULT_SNR_DB
    n_th: float = 67.1e3
    extinction_db: float = 90.0
    phase_grid: tuple[float, float, int] | None = None
    phase_points: int = 61
    n_samples: int = 200
    repeats: int = 200
    threshold_radii: tuple[float, ...] = (1.5,)
    error_model: str = "exact-bernoulli"
    seed: int = 12345
    workers: int = 1
    t_over_tref: tuple[float, ...] | None = None
    roc_ad_over_cr: tuple[float, ...] = (0.2, 1.0, 3.0)
    tradeoff_a_grid: tuple[float, float, int] = (0.2, 12.0, 121)
    roc_a_grid: tuple[float, float, int] = (0.0, 14.0, 701)
    acquisition: dict | None = None

    def validate(self) -> list[str]:
        """List of violated invariants; empty when the config is runnable."""
        problems: list[str] = []
        if self.mode not in MODES:
            problems.append(f"mode must be one of {MODES}, got {self.mode!r}")
        if not self.snr_db:
            problems.append("snr_db must list at least one value")
        for db in self.snr_db:
            if not math.isfinite(db):
                problems.append(f"snr_db entries must be finite, got {db!r}")
        if not (math.isfinite(self.n_th) and self.n_th >= 0.0):
            problems.append(f"n_th must be finite and >= 0, got {self.n_th!r}")
        if not (math.isfinite(self.extinction_db) and self.extinction_db >= 0.0):
            problems.append(
                f"extinction_db must be finite and >= 0, got {self.extinction_db!r}"
            )
        if self.phase_grid is not None:
            if len(self.phase_grid) != 3:
                problems.append("phase_grid must be [min, max, points]")
            else:
                lo, hi, pts = self.phase_grid
                if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                    problems.append("phase_grid needs min < max, both finite")
                if int(pts) < 2:
                    problems.append("phase_grid needs at least 2 points")
        if self.phase_points < 2:
            problems.append(f"phase_points must be >= 2, got {self.phase_points}")
        if self.n_samples < 2:
            problems.append(f"n_samples must be >= 2, got {self.n_samples}")
        if self.repeats < 1:
            problems.append(f"repeats must be >= 1, got {self.repeats}")
        if not self.threshold_radii:
            problems.append("threshold_radii must list at least one radius")
        for r in self.threshold_radii:
            if not (math.isfinite(r) and r > 0.0):
                problems.append(f"threshold radii must be finite and > 0, got {r!r}")
        if self.error_model not in ERROR_MODELS:
            problems.append(
                f"error_model must be one of {ERROR_MODELS}, got {self.error_model!r}"
            )
        if self.seed < 0:
            problems.append(f"seed must be >= 0, got {self.seed}")
        if self.workers < 1:
            problems.append(f"workers must be >= 1, got {self.workers}")
        if self.t_over_tref is not None:
            if not self.t_over_tref:
                problems.append("t_over_tref must list at least one value when given")
            for t in self.t_over_tref:
                if not (math.isfinite(t) and t > 0.0):
                    problems.append(f"t_over_tref entries must be > 0, got {t!r}")
        for k in self.roc_ad_over_cr:
            if not (math.isfinite(k) and k > 0.0):
                problems.append(f"roc_ad_over_cr entries must be > 0, got {k!r}")
        for name, grid in (("tradeoff_a_grid", self.tradeoff_a_grid), ("roc_a_grid", self.roc_a_grid)):
            if len(grid) != 3 or not (grid[0] < grid[1]) or int(grid[2]) < 2:
                problems.append(f"{name} must be [min, max, points] with min < max, points >= 2")
        if self.tradeoff_a_grid[0] <= 0.0:
            problems.append("tradeoff_a_grid radii must be > 0")
        if self.roc_a_grid[0] < 0.0:
            problems.append("roc_a_grid radii must be >= 0")
        if self.acquisition is not None:
            try:
                AcquisitionConfig(**self.acquisition)
            except (TypeError, DomainError) as exc:
                problems.append(f"acquisition settings invalid: {exc}")
        return problems

    def semantic_dict(self) -> dict:
        """Fields that determine the run's outputs (worker count excluded)."""
        d = asdict(self)
        d.pop("workers")
        return d

    def config_hash(self) -> str:
        """SHA-256 over the canonical JSON of the semantic fields."""
        canonical = json.dumps(self.semantic_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()

    def acquisition_config(self) -> AcquisitionConfig:
        return AcquisitionConfig(**(self.acquisition or {}))


_CONFIG_FIELDS = {f for f in ExperimentConfig.__dataclass_fields__}
_TUPLE_FIELDS = {
    "snr_db",
    "threshold_radii",
    "t_over_tref",
    "roc_ad_over_cr",
    "tradeoff_a_grid",
    "roc_a_grid",
    "phase_grid",
}


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build a config from parsed JSON, rejecting unknown keys."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(data) - _CONFIG_FIELDS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    kwargs = dict(data)
    for key in _TUPLE_FIELDS & set(kwargs):
        if kwargs[key] is not None:
            if not isinstance(kwargs[key], (list, tuple)):
                raise ConfigError(f"{key} must be a list")
            kwargs[key] = tuple(kwargs[key])
    try:
        cfg = ExperimentConfig(**kwargs)
    except TypeError as exc:
        raise ConfigError(f"bad config value types: {exc}") from exc
    return cfg


def load_config(path) -> ExperimentConfig:
    """Read and parse a JSON config file."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    return config_from_dict(data)


@dataclass
class RunManifest:
    """Description of a completed run, written as ``manifest.json``."""

    mode: str
    started_utc: str
    package_version: str
    backend: str
    seed: int
    workers: int
    config: dict
    config_sha256: str
    output_directory: str = ""
    outputs: list[str] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def write(self, directory: Path) -> Path:
        path = directory / "manifest.json"
        with open(path, "w") as fh:
            json.dump(asdict(self), fh, indent=2, sort_keys=True)
            fh.write("\n")
        return path


def default_output_root() -> Path:
    """Output root: the environment override or ``./darkport-runs``."""
    env = os.environ.get(OUTPUT_ROOT_ENV, "").strip()
    return Path(env) if env else Path("darkport-runs")


def prepare_run_directory(root: Path, mode: str, flat: bool) -> Path:
    """Create and return the directory this run writes into.

    Timestamped as ``<root>/<mode>/<UTC time>``, unless ``flat`` puts the
    files directly under ``root``.
    """
    root = Path(root)
    if flat:
        root.mkdir(parents=True, exist_ok=True)
        return root
    base = root / mode
    base.mkdir(parents=True, exist_ok=True)
    for attempt in range(100):
        stamp = datetime.now(timezone.utc).strftime("%Y%m%d-%H%M%S-%f")
        candidate = base / (stamp if attempt == 0 else f"{stamp}-{attempt}")
        try:
            candidate.mkdir(exist_ok=False)
            return candidate
        except FileExistsError:
            continue
    raise ConfigError(f"could not allocate a fresh run directory under {base}")


def _fmt(x: float) -> str:
    """Format one numeric cell with 12 significant digits."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.11e}"


def write_table(path: Path, columns: list[str], rows) -> None:
    """Write a CSV table with a header row and 12-significant-digit cells."""
    with open(path, "w", newline="") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _snr_label(db: float) -> str:
    return f"{db:g}dB".replace("-", "m")


def _interferometer_for(config: ExperimentConfig, snr_db: float) -> InterferometerConfig:
    snr = db_to_linear(snr_db)
    sigma2 = config.n_th + 0.5
    return InterferometerConfig.with_extinction_db(
        n_c_total=snr * sigma2,
        n_th=config.n_th,
        extinction_db=config.extinction_db,
    )


def _phase_grid_for(config: ExperimentConfig, snr_linear: float) -> np.ndarray:
    if config.phase_grid is not None:
        lo, hi, pts = config.phase_grid
        return np.linspace(float(lo), float(hi), int(pts))
    try:
        w = theoretical_fwhm(snr_linear)
    except NoSuperResolvedFeatureError:
        w = math.pi / 2.0
    span = min(1.5 * w, math.pi)
    return np.linspace(-span, span, int(config.phase_points))


def run_experiment(config: ExperimentConfig, out_root=None, flat: bool = False) -> RunManifest:
    """Execute one experiment and write its tables and manifest.

    Returns the manifest (already written to the run directory).  Raises
    `ConfigError` for invalid configs and lets estimation errors such as
    `FitFailureError` propagate to the caller.
    """
    problems = config.validate()
    if problems:
        raise ConfigError("; ".join(problems))
    directory = prepare_run_directory(
        Path(out_root) if out_root is not None else default_output_root(),
        config.mode,
        flat,
    )
    manifest = RunManifest(
        mode=config.mode,
        started_utc=datetime.now(timezone.utc).isoformat(),
        package_version=__version__,
        backend=active_backend(),
        seed=config.seed,
        workers=config.workers,
        config=config.semantic_dict(),
        config_sha256=config.config_hash(),
        output_directory=str(directory),
    )
    runner = {
        "parity-sweep": _run_parity_sweep,
        "sensitivity": _run_sensitivity,
        "tradeoff": _run_tradeoff,
        "roc": _run_roc,
        "integration-time": _run_integration_time,
        "timeseries-demo": _run_timeseries_demo,
    }[config.mode]
    runner(config, directory, manifest)
    manifest.write(directory)
    return manifest


def _run_parity_sweep(config: ExperimentConfig, directory: Path, manifest: RunManifest) -> None:
    fit_rows = []
    for db in config.snr_db:
        interferometer = _interferometer_for(config, db)
        phases = _phase_grid_for(config, interferometer.snr)
        label = _snr_label(db)
        sweep = simulate_parity_sweep(
            interferometer,
            phases,
            method="ml",
            n_samples=config.n_samples,
            repeats=config.repeats,
            seed=config.seed,
            workers=config.workers,
        )
        name = f"sweep_{label}_ml.csv"
        write_table(
            directory / name,
            ["phase_rad", "parity", "parity_std_error_per_sample"],
            zip(sweep.phases, sweep.values, sweep.std_errors),
        )
        manifest.outputs.append(name)
        fit = fit_parity_model(sweep)
        fit_rows.append(
            (db, fit.snr, fit.n_c, fit.n_th, fit.fwhm, fit.peak_value, fit.residual_rms)
        )
        for radius in config.threshold_radii:
            thr_sweep = simulate_parity_sweep(
                interferometer,
                phases,
                method="threshold",
                n_samples=config.n_samples,
                repeats=config.repeats,
                seed=config.seed,
                threshold=radius,
                workers=config.workers,
            )
            name = f"sweep_{label}_threshold_a{radius:g}.csv"
            write_table(
                directory / name,
                ["phase_rad", "p_accept", "p_std_error_per_sample"],
                zip(thr_sweep.phases, thr_sweep.values, thr_sweep.std_errors),
            )
            manifest.outputs.append(name)
    write_table(
        directory / "fits.csv",
        [
            "snr_db_nominal",
            "snr_fit",
            "n_c_fit",
            "n_th_fit",
            "fwhm_rad",
            "peak_parity_fit",
            "residual_rms",
        ],
        fit_rows,
    )
    manifest.outputs.append("fits.csv")
    manifest.summary["fwhm_rad_by_snr_db"] = {
        f"{row[0]:g}": row[4] for row in fit_rows
    }


def _run_sensitivity(config: ExperimentConfig, directory: Path, manifest: RunManifest) -> None:
    for db in config.snr_db:
        interferometer = _interferometer_for(config, db)
        snr = interferometer.snr
        phases = _phase_grid_for(config, snr)
        label = _snr_label(db)
        sweep = simulate_parity_sweep(
            interferometer,
            phases,
            method="ml",
            n_samples=config.n_samples,
            repeats=config.repeats,
            seed=config.seed,
            workers=config.workers,
        )
        curve = sensitivity_from_curve(sweep)
        theory = ml_sensitivity_theory(snr, sweep.phases)
        bound = cr_bound(snr)
        name = f"sensitivity_{label}.csv"
        write_table(
            directory / name,
            [
                "phase_rad",
                "parity",
                "parity_std_error_per_sample",
                "delta_phi_empirical_per_sample",
                "delta_phi_ml_theory_per_sample",
                "cr_bound_per_sample",
            ],
            zip(
                sweep.phases,
                sweep.values,
                sweep.std_errors,
                curve.delta_phi,
                theory,
                np.full_like(sweep.phases, bound),
            ),
        )
        manifest.outputs.append(name)
        phi_min, best = curve.minimum()
        manifest.summary[f"min_sensitivity_{label}"] = {
            "phase_rad": phi_min,
            "delta_phi_per_sample": best,
            "over_cr_bound": best / bound,
        }


def _run_tradeoff(config: ExperimentConfig, directory: Path, manifest: RunManifest) -> None:
    lo, hi, pts = config.tradeoff_a_grid
    grid = np.geomspace(float(lo), float(hi), int(pts))
    curve = tradeoff_curve(a_over_sigma=grid, error_model=config.error_model)
    write_table(
        directory / "tradeoff.csv",
        ["a_over_sigma", "resolution_norm", "sensitivity_over_cr"],
        zip(curve.a_over_sigma, curve.resolution_norm, curve.sensitivity_over_cr),
    )
    manifest.outputs.append("tradeoff.csv")
    factors = min_sensitivity_factor()
    manifest.summary["crossing_a_over_sigma"] = curve.crossing()
    manifest.summary["min_sensitivity_factor"] = factors
    manifest.summary["error_model"] = config.error_model


def _run_roc(config: ExperimentConfig, directory: Path, manifest: RunManifest) -> None:
    lo, hi, pts = config.roc_a_grid
    grid = np.linspace(float(lo), float(hi), int(pts))
    aucs = {}
    for k in config.roc_ad_over_cr:
        curve = roc_curve(k, a_over_sigma=grid)
        name = f"roc_ad{k:g}.csv"
        write_table(
            directory / name,
            ["a_over_sigma", "fpr", "tpr"],
            zip(curve.a_over_sigma, curve.fpr, curve.tpr),
        )
        manifest.outputs.append(name)
        aucs[f"{k:g}"] = curve.auc()
    manifest.summary["auc_by_ad_over_cr"] = aucs


def _run_integration_time(config: ExperimentConfig, directory: Path, manifest: RunManifest) -> None:
    ts = config.t_over_tref or tuple(np.geomspace(1.0, 1e5, 26))
    for db in config.snr_db:
        interferometer = _interferometer_for(config, db)
        label = _snr_label(db)
        rows = []
        drop_t = None
        for t_rel in ts:
            t = t_rel * interferometer.t_ref
            snr_t = snr_at_time(interferometer, t)
            peak = peak_parity(interferometer, t)
            try:
                fwhm = theoretical_fwhm(snr_t)
            except NoSuperResolvedFeatureError:
                fwhm = math.nan
            leak = interferometer.n_c_at(t) * interferometer.extinction
            if drop_t is None and leak >= interferometer.n_th > 0.0:
                drop_t = t_rel
            rows.append((t_rel, snr_t, peak, fwhm, leak))
        name = f"integration_time_{label}.csv"
        write_table(
            directory / name,
            ["t_over_tref", "snr_linear", "peak_parity", "fwhm_rad", "leaked_n_c"],
            rows,
        )
        manifest.outputs.append(name)
        if drop_t is not None:
            manifest.summary[f"leak_reaches_n_th_at_t_over_tref_{label}"] = drop_t


def _run_timeseries_demo(config: ExperimentConfig, directory: Path, manifest: RunManifest) -> None:
    acquisition = config.acquisition_config()
    interferometer = _interferometer_for(config, config.snr_db[0])
    try:
        phi_demo = 0.5 * theoretical_fwhm(interferometer.snr)
    except NoSuperResolvedFeatureError:
        phi_demo = math.pi / 4.0
    state = output_state(interferometer, phi_demo)
    window = synthesize_timeseries(acquisition, state, seed=config.seed, window_index=0)
    write_timeseries_csv(directory / "timeseries_window0.csv", window)
    manifest.outputs.append("timeseries_window0.csv")
    ensemble = ensemble_from_timeseries(
        acquisition, state, n_samples=config.n_samples, seed=config.seed
    )
    write_iq_csv(directory / "iq_ensemble.csv", ensemble)
    manifest.outputs.append("iq_ensemble.csv")
    x0, p0 = state.center
    manifest.summary["demo"] = {
        "phase_rad": phi_demo,
        "expected_center": [x0, p0],
        "observed_center": [
            float(ensemble.samples[:, 0].mean()),
            float(ensemble.samples[:, 1].mean()),
        ],
        "expected_sigma2": state.sigma2,
        "observed_sigma2": float(
            ((ensemble.samples - ensemble.samples.mean(axis=0)) ** 2).sum()
            / (2.0 * len(ensemble))
        ),
    }
