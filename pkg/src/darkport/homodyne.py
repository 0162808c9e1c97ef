"""Heterodyne-style acquisition chain: voltage records to I/Q samples.

The measurement digitizes the dark-port field as a real voltage record, one
window per state preparation, and demodulates at the carrier to obtain one
complex quadrature sample per window.  This module simulates that chain and
runs it backwards: given a Gaussian state it synthesizes records, and given
records it extracts the in-phase and quadrature components whose ensemble
statistics reproduce the state's phase-space distribution exactly.

Synthesis and extraction are calibrated against each other so that a
noiseless round trip is exact to floating-point precision and a noisy one
yields I/Q samples distributed as an isotropic normal with the state's
center and per-quadrature variance.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._streams import STREAM_PHASE_SPACE, STREAM_TIMESERIES, standard_normals
from .errors import DegenerateEnsembleError, DomainError
from .states import TWO_PI, GaussianState, _require_finite


class IQSample(NamedTuple):
    """One demodulated quadrature pair, in displacement units."""

    i: float
    q: float


@dataclass(frozen=True)
class AcquisitionConfig:
    """Digitizer and demodulation settings for one acquisition window.

    The carrier must sit exactly on a discrete Fourier bin of the window,
    strictly between DC and the Nyquist bin, so that single-bin demodulation
    is free of spectral leakage.  With the defaults the window holds
    ``N = 500`` samples and the carrier occupies bin ``k = 124``.

    ``volts_per_unit`` converts one displacement unit into the voltage
    amplitude it produces at the digitizer; ``reference_phase`` is the
    demodulation phase subtracted when rotating the carrier-frame result
    back into the state frame.
    """

    carrier_hz: float = 4.96e9
    sample_rate_hz: float = 20e9
    window_s: float = 25e-9
    volts_per_unit: float = 1.0
    reference_phase: float = 0.0

    def __post_init__(self) -> None:
        f = _require_finite("carrier_hz", self.carrier_hz)
        r = _require_finite("sample_rate_hz", self.sample_rate_hz)
        w = _require_finite("window_s", self.window_s)
        v = _require_finite("volts_per_unit", self.volts_per_unit)
        _require_finite("reference_phase", self.reference_phase)
        if f <= 0.0 or r <= 0.0 or w <= 0.0:
            raise DomainError("carrier_hz, sample_rate_hz and window_s must be > 0")
        if v <= 0.0:
            raise DomainError(f"volts_per_unit must be > 0, got {v}")
        n_float = r * w
        n = round(n_float)
        if n < 4 or abs(n_float - n) > 1e-6 * max(1.0, n):
            raise DomainError(
                f"window must hold an integer number >= 4 of samples, got {n_float}"
            )
        k_float = f * w
        k = round(k_float)
        if abs(k_float - k) > 1e-6 * max(1.0, abs(k_float)):
            raise DomainError(
                f"carrier must sit on a Fourier bin of the window; "
                f"carrier_hz * window_s = {k_float} is not an integer"
            )
        if not 0 < k < n / 2:
            raise DomainError(
                f"carrier bin must lie strictly between DC and Nyquist; "
                f"got bin {k} of {n} samples"
            )

    @property
    def n_samples_per_window(self) -> int:
        """Number of digitizer samples in one window."""
        return round(self.sample_rate_hz * self.window_s)

    @property
    def carrier_bin(self) -> int:
        """Discrete Fourier bin index occupied by the carrier."""
        return round(self.carrier_hz * self.window_s)

    @property
    def noise_scale_volts(self) -> float:
        """Per-sample voltage noise giving unit quadrature variance per unit state variance.

        A white voltage noise of standard deviation ``v * sigma * sqrt(N/2)``
        demodulates to independent I and Q fluctuations of variance
        ``sigma^2`` each, matching direct phase-space sampling.
        """
        n = self.n_samples_per_window
        return self.volts_per_unit * math.sqrt(0.5 * n)

    def times(self) -> np.ndarray:
        """Sample times within a window, in seconds."""
        n = self.n_samples_per_window
        return np.arange(n) / self.sample_rate_hz


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """One digitized voltage window."""

    samples: np.ndarray
    config: AcquisitionConfig

    def __post_init__(self) -> None:
        samples = np.ascontiguousarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise DomainError("time series samples must be one-dimensional")
        if samples.shape[0] != self.config.n_samples_per_window:
            raise DomainError(
                f"expected {self.config.n_samples_per_window} samples per window, "
                f"got {samples.shape[0]}"
            )
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.shape[0]


@dataclass(frozen=True, eq=False)
class IQEnsemble:
    """A batch of I/Q samples with a record of how they were produced.

    ``samples`` has shape ``(n, 2)`` in displacement units.  ``seed`` is the
    generator seed that produced them (None for data loaded from files), and
    ``source`` names the production path.
    """

    samples: np.ndarray
    seed: int | None = None
    source: str = "phase-space"

    def __post_init__(self) -> None:
        samples = np.ascontiguousarray(self.samples, dtype=np.float64)
        if samples.ndim != 2 or samples.shape[1] != 2:
            raise DomainError("ensemble samples must have shape (n, 2)")
        if samples.shape[0] == 0:
            raise DegenerateEnsembleError("ensemble must hold at least one sample")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.shape[0]

    def __getitem__(self, index: int) -> IQSample:
        row = self.samples[index]
        return IQSample(float(row[0]), float(row[1]))


def sample_phase_space(state: GaussianState, n_samples: int, seed: int) -> IQEnsemble:
    """Draw I/Q samples directly from the state's Wigner distribution.

    For a symmetric Gaussian state the distribution is a positive normal, so
    sampling it is exact: each sample is the state's center plus isotropic
    noise of per-axis variance ``sigma2``.
    """
    if n_samples < 1:
        raise DegenerateEnsembleError(f"n_samples must be >= 1, got {n_samples}")
    normals = standard_normals(seed, STREAM_PHASE_SPACE, 0, n_samples, dim=2)
    x0, p0 = state.center
    samples = normals * math.sqrt(state.sigma2) + np.array([x0, p0])
    return IQEnsemble(samples=samples, seed=int(seed), source="phase-space")


def _signal_voltages(config: AcquisitionConfig, state: GaussianState) -> np.ndarray:
    """Deterministic carrier voltage produced by the state's displacement."""
    t = config.times()
    phase = TWO_PI * config.carrier_hz * t + config.reference_phase + state.theta
    return config.volts_per_unit * state.mu * np.cos(phase)


def synthesize_timeseries(
    config: AcquisitionConfig,
    state: GaussianState,
    seed: int = 0,
    *,
    noiseless: bool = False,
    window_index: int = 0,
) -> TimeSeries:
    """Simulate the digitized voltage record of one acquisition window.

    The record is a carrier tone at the state's displacement amplitude and
    angle plus white Gaussian voltage noise scaled so that demodulation
    reproduces the state's per-quadrature variance.  ``window_index`` selects
    the noise stream so that consecutive windows of an ensemble are
    independent yet individually reproducible.
    """
    signal = _signal_voltages(config, state)
    if noiseless:
        return TimeSeries(samples=signal, config=config)
    n = config.n_samples_per_window
    noise = standard_normals(seed, STREAM_TIMESERIES, window_index, n, dim=1)[:, 0]
    scale = config.noise_scale_volts * math.sqrt(state.sigma2)
    return TimeSeries(samples=signal + scale * noise, config=config)


def extract_iq(series: TimeSeries) -> IQSample:
    """Demodulate one window into an I/Q pair in displacement units.

    Projects the record onto the carrier bin of the window's discrete
    Fourier transform with a 2/N normalization, undoes the transduction
    gain, and rotates by the negative reference phase.  For a noiseless
    record of a state with displacement ``(mu, theta)`` the result is
    exactly ``(mu cos(theta), mu sin(theta))``.
    """
    config = series.config
    n = config.n_samples_per_window
    k = config.carrier_bin
    j = np.arange(n)
    z = (2.0 / n) * np.dot(series.samples, np.exp(-2j * math.pi * k * j / n))
    z *= np.exp(-1j * config.reference_phase) / config.volts_per_unit
    return IQSample(float(z.real), float(z.imag))


def ensemble_from_timeseries(
    config: AcquisitionConfig,
    state: GaussianState,
    n_samples: int,
    seed: int = 0,
    *,
    noiseless: bool = False,
) -> IQEnsemble:
    """Run the full chain for ``n_samples`` windows and collect I/Q pairs.

    Window ``w`` uses noise stream item ``w``, so element ``w`` of the
    result equals ``extract_iq(synthesize_timeseries(..., window_index=w))``
    sample for sample.
    """
    if n_samples < 1:
        raise DegenerateEnsembleError(f"n_samples must be >= 1, got {n_samples}")
    n = config.n_samples_per_window
    k = config.carrier_bin
    j = np.arange(n)
    basis = np.exp(-2j * math.pi * k * j / n)
    rotation = np.exp(-1j * config.reference_phase) / config.volts_per_unit
    signal = _signal_voltages(config, state)
    scale = 0.0 if noiseless else config.noise_scale_volts * math.sqrt(state.sigma2)
    samples = np.empty((n_samples, 2), dtype=np.float64)
    for w in range(n_samples):
        record = signal
        if scale:
            noise = standard_normals(seed, STREAM_TIMESERIES, w, n, dim=1)[:, 0]
            record = signal + scale * noise
        z = (2.0 / n) * np.dot(record, basis) * rotation
        samples[w, 0] = z.real
        samples[w, 1] = z.imag
    return IQEnsemble(samples=samples, seed=int(seed), source="timeseries")


def write_timeseries_csv(path, series: TimeSeries) -> None:
    """Write one voltage window as CSV with columns time_s, voltage_v."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["time_s", "voltage_v"])
        for t, v in zip(series.config.times(), series.samples):
            writer.writerow([f"{t:.11e}", f"{v:.11e}"])


def read_timeseries_csv(path, config: AcquisitionConfig) -> TimeSeries:
    """Read a voltage window written by `write_timeseries_csv`."""
    voltages = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or header[:2] != ["time_s", "voltage_v"]:
            raise DomainError(f"{path}: not a time-series CSV")
        for row in reader:
            voltages.append(float(row[1]))
    return TimeSeries(samples=np.asarray(voltages), config=config)


def write_iq_csv(path, ensemble: IQEnsemble) -> None:
    """Write an I/Q ensemble as CSV with columns i_units, q_units."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["i_units", "q_units"])
        for row in ensemble.samples:
            writer.writerow([f"{row[0]:.11e}", f"{row[1]:.11e}"])


def read_iq_csv(path) -> IQEnsemble:
    """Read an I/Q ensemble written by `write_iq_csv`."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or header[:2] != ["i_units", "q_units"]:
            raise DomainError(f"{path}: not an I/Q ensemble CSV")
        for row in reader:
            rows.append((float(row[0]), float(row[1])))
    if not rows:
        raise DegenerateEnsembleError(f"{path}: no samples")
    return IQEnsemble(samples=np.asarray(rows), seed=None, source="file")
