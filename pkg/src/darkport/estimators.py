"""Parity estimation from I/Q ensembles.

Two estimators are provided.  The maximum-likelihood route fits the Gaussian
sufficient statistics (centroid and pooled variance) and plugs them into the
closed-form parity of a symmetric Gaussian state.  The threshold route
counts the fraction of samples inside a circle around the phase-space
origin, which for small radii is proportional to the Wigner density at the
origin and hence to parity.

Error bars throughout the package are quoted per single sample: the
uncertainty of an estimate built from ``n`` samples is ``std_error /
sqrt(n)``.  This convention lets curves taken with different sample counts
be compared directly and matches the normalization of the Cramer-Rao bound
used in `darkport.metrology`.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DegenerateEnsembleError, DomainError, SensitivityDivergenceError
from .homodyne import IQEnsemble
from .interferometer import InterferometerConfig, parity_vs_phase
from .states import TWO_PI, _require_finite

#: Error models for the threshold estimator's per-sample uncertainty.
ERROR_MODELS = ("exact-bernoulli", "sqrt-p")


def _as_sample_array(samples) -> np.ndarray:
    if isinstance(samples, IQEnsemble):
        return samples.samples
    arr = np.ascontiguousarray(samples, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DomainError("samples must be an IQEnsemble or an (n, 2) array")
    return arr


@dataclass(frozen=True)
class MLFit:
    """Maximum-likelihood Gaussian parameters of an I/Q ensemble.

    ``sigma2`` is the pooled per-quadrature variance (normalized by ``2n``,
    the maximum-likelihood choice, so it is biased low by a factor
    ``(2n - 2) / (2n)`` for finite ensembles).
    """

    mu: float
    theta: float
    sigma2: float
    n_samples: int

    @property
    def snr(self) -> float:
        """Estimated displacement signal-to-noise ratio ``mu^2 / (2 sigma2)``."""
        return 0.5 * self.mu * self.mu / self.sigma2


@dataclass(frozen=True)
class ParityEstimate:
    """A parity-type estimate with its per-sample statistical error.

    For the maximum-likelihood method ``value`` is the parity expectation
    itself.  For the threshold method ``value`` is the circle probability
    ``p`` (the fraction of samples within the acceptance radius); the
    parity-units reading is exposed by `parity_value`, which divides by the
    squared radius, since for small circles ``p = pi * W(0,0) * a^2``.
    """

    value: float
    std_error: float
    method: str
    n_samples: int
    radius: float | None = None

    @property
    def parity_value(self) -> float:
        """The estimate converted to parity units."""
        if self.radius is None:
            return self.value
        return self.value / (self.radius * self.radius)

    @property
    def parity_std_error(self) -> float:
        """Per-sample error of `parity_value`."""
        if self.radius is None:
            return self.std_error
        return self.std_error / (self.radius * self.radius)


def ml_fit(samples) -> MLFit:
    """Fit the symmetric Gaussian sufficient statistics of an ensemble.

    The centroid gives the displacement estimate (magnitude and angle) and
    the pooled second moment about the centroid gives the per-quadrature
    variance.  Requires at least two samples, and rejects ensembles whose
    samples all coincide since a zero variance makes every downstream
    quantity undefined.
    """
    xy = _as_sample_array(samples)
    n = xy.shape[0]
    if n < 2:
        raise DegenerateEnsembleError(
            f"maximum-likelihood fit needs at least 2 samples, got {n}"
        )
    cx, cy, s2 = backend.batch_ml_moments(xy[None, :, :])
    sigma2 = float(s2[0])
    if sigma2 <= 0.0:
        raise DegenerateEnsembleError("all samples coincide; variance is zero")
    mu = math.hypot(float(cx[0]), float(cy[0]))
    theta = math.atan2(float(cy[0]), float(cx[0])) % TWO_PI
    return MLFit(mu=mu, theta=theta, sigma2=sigma2, n_samples=n)


def parity_from_fit(fit: MLFit) -> float:
    """Parity expectation implied by fitted Gaussian parameters."""
    return math.exp(-fit.mu * fit.mu / (2.0 * fit.sigma2)) / (2.0 * fit.sigma2)


def ml_parity(samples) -> ParityEstimate:
    """Maximum-likelihood parity estimate of an ensemble.

    The per-sample error follows from propagating the single-sample Fisher
    information of the displacement through the parity formula:

        std_error = value * sqrt(1 + mu^2 / sigma2)

    evaluated at the fitted parameters.  It is exact at zero displacement
    and a good approximation while the displacement stays within a few
    noise widths of the origin, the regime where the parity signal lives.
    """
    fit = ml_fit(samples)
    value = parity_from_fit(fit)
    r = fit.mu * fit.mu / fit.sigma2
    return ParityEstimate(
        value=value,
        std_error=value * math.sqrt(1.0 + r),
        method="ml",
        n_samples=fit.n_samples,
    )


def fisher_parity_error(mu: float, sigma2: float) -> float:
    """Cramer-Rao per-sample error of the Gaussian parity value.

    Full delta-method propagation of the single-sample Fisher information
    of ``(mu, sigma2)`` (diagonal, with variances ``sigma2`` and
    ``sigma2^2`` per quadrature pair) through the parity formula:

        delta = value * sqrt(1 + mu^4 / (4 sigma2^2))

    This is the error of an ideal efficient estimator; its phase minimum
    saturates the Cramer-Rao sensitivity bound.
    """
    mu = _require_finite("mu", mu)
    sigma2 = _require_finite("sigma2", sigma2)
    if sigma2 <= 0.0:
        raise DomainError(f"sigma2 must be > 0, got {sigma2}")
    value = math.exp(-mu * mu / (2.0 * sigma2)) / (2.0 * sigma2)
    r = mu * mu / sigma2
    return value * math.sqrt(1.0 + 0.25 * r * r)


@dataclass(frozen=True)
class ThresholdConfig:
    """Acceptance circle and error model for the threshold estimator.

    ``sigma`` is the calibrated per-quadrature standard deviation of the
    dark-port noise, obtained from a separate calibration run; the
    acceptance radius is quoted relative to it.  The ``exact-bernoulli``
    error model uses the binomial standard deviation ``sqrt(p (1 - p))``
    per sample; ``sqrt-p`` uses the small-p counting approximation
    ``sqrt(p)``.
    """

    radius_over_sigma: float
    sigma: float
    error_model: str = "exact-bernoulli"

    def __post_init__(self) -> None:
        r = _require_finite("radius_over_sigma", self.radius_over_sigma)
        s = _require_finite("sigma", self.sigma)
        if r <= 0.0:
            raise DomainError(f"radius_over_sigma must be > 0, got {r}")
        if s <= 0.0:
            raise DomainError(f"sigma must be > 0, got {s}")
        if self.error_model not in ERROR_MODELS:
            raise DomainError(
                f"error_model must be one of {ERROR_MODELS}, got {self.error_model!r}"
            )

    @property
    def radius(self) -> float:
        """Acceptance radius in displacement units."""
        return self.radius_over_sigma * self.sigma


def bernoulli_std_error(p: float, error_model: str) -> float:
    """Per-sample standard deviation of an acceptance indicator."""
    if error_model == "exact-bernoulli":
        return math.sqrt(max(p * (1.0 - p), 0.0))
    if error_model == "sqrt-p":
        return math.sqrt(max(p, 0.0))
    raise DomainError(f"error_model must be one of {ERROR_MODELS}, got {error_model!r}")


def threshold_estimate(samples, config: ThresholdConfig) -> ParityEstimate:
    """Circle-probability estimate of an ensemble.

    Counts the fraction ``p`` of samples within the acceptance radius of
    the phase-space origin.  ``value`` is ``p`` itself; use `parity_value`
    for the parity-units reading ``p / radius^2``.
    """
    xy = _as_sample_array(samples)
    n = xy.shape[0]
    count = backend.batch_radial_count(xy[None, :, :], config.radius)
    p = float(count[0]) / n
    return ParityEstimate(
        value=p,
        std_error=bernoulli_std_error(p, config.error_model),
        method="threshold",
        n_samples=n,
        radius=config.radius,
    )


def rician_cdf(nu, sigma: float, a):
    """Probability that a sample lands within radius ``a`` of the origin.

    For an isotropic Gaussian of per-axis standard deviation ``sigma``
    displaced by ``nu``, the radial distance follows a Rice distribution;
    this evaluates its cumulative distribution at ``a``.  ``nu`` and ``a``
    may be scalars or broadcastable arrays.  Accurate to better than 1e-10
    absolute for ``nu/sigma`` and ``a/sigma`` up to 50; tails below the
    series truncation floor (about 1e-16) round to zero.
    """
    cdf, _ = _rician_both(nu, sigma, a)
    return cdf


def rician_sf(nu, sigma: float, a):
    """Probability that a sample lands outside radius ``a``; see `rician_cdf`.

    Computed directly from its own series rather than as ``1 - cdf``, so a
    small survival probability keeps full absolute accuracy.
    """
    _, sf = _rician_both(nu, sigma, a)
    return sf


def _rician_both(nu, sigma: float, a):
    sigma = _require_finite("sigma", sigma)
    if sigma <= 0.0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    nu_arr = np.asarray(nu, dtype=np.float64)
    a_arr = np.asarray(a, dtype=np.float64)
    if np.any(nu_arr < 0.0) or not np.all(np.isfinite(nu_arr)):
        raise DomainError("nu must be finite and >= 0")
    if np.any(a_arr < 0.0) or not np.all(np.isfinite(a_arr)):
        raise DomainError("a must be finite and >= 0")
    b, x = np.broadcast_arrays(nu_arr / sigma, a_arr / sigma)
    shape = b.shape
    # broadcast views can alias each other; the kernels want plain buffers
    b = np.ascontiguousarray(b.ravel(), dtype=np.float64).copy()
    x = np.ascontiguousarray(x.ravel(), dtype=np.float64).copy()
    cdf, sf = backend.rician_cdf_sf(b, x)
    if shape == ():
        return float(cdf[0]), float(sf[0])
    return cdf.reshape(shape), sf.reshape(shape)


def direct_parity_sensitivity(
    config: InterferometerConfig, phi: float, t: float | None = None
) -> float:
    """Per-sample phase error of an ideal projective parity measurement.

    The parity operator has eigenvalues of unit magnitude, so a single
    projective readout has variance ``1 - P^2`` about its expectation
    ``P(phi)``.  Dividing the standard deviation by the slope of the
    response gives the single-shot phase sensitivity

        delta_phi = sqrt(1 - P^2) / |dP/dphi|

    with ``dP/dphi = -P * n_c sin(phi) / (2 sigma2)``.  Raises
    `SensitivityDivergenceError` where the slope vanishes.
    """
    phi = _require_finite("phi", phi)
    value = float(parity_vs_phase(config, phi, t))
    sin_phi = math.sin(phi)
    # sin(k*pi) evaluates to a rounding-level residue rather than zero, so
    # treat any value at that scale as a true stationary point
    if abs(sin_phi) <= 4.0 * sys.float_info.epsilon * max(1.0, abs(phi)):
        raise SensitivityDivergenceError(
            f"parity slope vanishes at phi = {phi}; sensitivity is undefined there"
        )
    slope = value * config.n_c_at(t) * sin_phi / (2.0 * config.sigma2)
    if slope == 0.0:
        raise SensitivityDivergenceError(
            f"parity slope underflows at phi = {phi}; sensitivity is undefined there"
        )
    return math.sqrt(max(1.0 - value * value, 0.0)) / abs(slope)
