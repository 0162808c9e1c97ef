"""Symmetric Gaussian states of a single microwave mode.

A displaced thermal state is fully described by three numbers: the magnitude
``mu`` and angle ``theta`` of the phase-space displacement, and the symmetric
per-quadrature variance ``sigma2``.  Units follow the convention in which the
vacuum state has variance 1/2 in each quadrature, so a coherent amplitude
alpha carries ``|alpha|^2 = mu^2 / 2`` photons and a thermal occupation n_th
adds n_th to each quadrature variance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi

#: Per-quadrature variance of the vacuum state (hbar = 1 convention).
VACUUM_VARIANCE = 0.5


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class GaussianState:
    """A symmetric (phase-insensitive) Gaussian state.

    Parameters
    ----------
    mu:
        Displacement magnitude, ``mu >= 0``.
    theta:
        Displacement angle in radians.  Stored normalized to ``[0, 2*pi)``.
    sigma2:
        Per-quadrature variance.  Must be at least the vacuum value 1/2;
        anything smaller would describe a squeezed or unphysical state that
        this model does not cover.
    """

    mu: float
    theta: float
    sigma2: float

    def __post_init__(self) -> None:
        mu = _require_finite("mu", self.mu)
        theta = _require_finite("theta", self.theta)
        sigma2 = _require_finite("sigma2", self.sigma2)
        if mu < 0.0:
            raise DomainError(f"displacement magnitude must be >= 0, got {mu}")
        if sigma2 < VACUUM_VARIANCE:
            raise DomainError(
                f"per-quadrature variance must be >= {VACUUM_VARIANCE} "
                f"(vacuum), got {sigma2}"
            )
        theta = theta % TWO_PI
        if theta >= TWO_PI:  # guard the mu % m == m float edge case
            theta = 0.0
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "sigma2", sigma2)

    @property
    def n_coherent(self) -> float:
        """Photon number carried by the displacement, ``mu^2 / 2``."""
        return 0.5 * self.mu * self.mu

    @property
    def n_thermal(self) -> float:
        """Thermal occupation, ``sigma2 - 1/2``."""
        return self.sigma2 - VACUUM_VARIANCE

    @property
    def center(self) -> tuple[float, float]:
        """Phase-space center ``(x, p)`` of the Wigner distribution."""
        return (self.mu * math.cos(self.theta), self.mu * math.sin(self.theta))

    @property
    def alpha(self) -> complex:
        """Complex coherent amplitude, ``mu * exp(i*theta) / sqrt(2)``."""
        x, p = self.center
        return complex(x, p) / math.sqrt(2.0)


@dataclass(frozen=True)
class PhotonBudget:
    """Mean photon numbers of the coherent and thermal parts of a state."""

    n_coherent: float
    n_thermal: float

    def __post_init__(self) -> None:
        n_c = _require_finite("n_coherent", self.n_coherent)
        n_t = _require_finite("n_thermal", self.n_thermal)
        if n_c < 0.0:
            raise DomainError(f"n_coherent must be >= 0, got {n_c}")
        if n_t < 0.0:
            raise DomainError(f"n_thermal must be >= 0, got {n_t}")
        object.__setattr__(self, "n_coherent", n_c)
        object.__setattr__(self, "n_thermal", n_t)

    @property
    def snr(self) -> float:
        """Displacement signal-to-noise ratio ``n_c / (n_th + 1/2)``.

        The half photon in the denominator is vacuum noise, so the ratio
        stays finite for a pure coherent state.
        """
        return self.n_coherent / (self.n_thermal + VACUUM_VARIANCE)


def compose_coherent_thermal(budget: PhotonBudget, theta: float = 0.0) -> GaussianState:
    """Build the displaced thermal state holding the given photon numbers."""
    return GaussianState(
        mu=math.sqrt(2.0 * budget.n_coherent),
        theta=theta,
        sigma2=budget.n_thermal + VACUUM_VARIANCE,
    )


def budget_of(state: GaussianState) -> PhotonBudget:
    """Photon bookkeeping of a state; inverse of `compose_coherent_thermal`."""
    return PhotonBudget(n_coherent=state.n_coherent, n_thermal=state.n_thermal)


def snr_of(budget: PhotonBudget) -> float:
    """Displacement signal-to-noise ratio of a photon budget."""
    return budget.snr


def wigner_density(state: GaussianState, x, p):
    """Wigner distribution of the state evaluated at phase-space points.

    ``x`` and ``p`` may be scalars or broadcastable arrays.  For a symmetric
    Gaussian state the distribution is an isotropic normal of variance
    ``sigma2`` centered on the displacement:

        W(x, p) = exp(-((x - x0)^2 + (p - p0)^2) / (2 sigma2)) / (2 pi sigma2)

    It is normalized to unit integral over the plane.
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    x0, p0 = state.center
    s2 = state.sigma2
    r2 = (x - x0) ** 2 + (p - p0) ** 2
    out = np.exp(-r2 / (2.0 * s2)) / (TWO_PI * s2)
    if out.ndim == 0:
        return float(out)
    return out


def parity_of_state(state: GaussianState) -> float:
    """Expectation value of the photon-number parity operator.

    For a Gaussian state this is pi times the Wigner density at the origin:

        <parity> = (1 / (2 sigma2)) * exp(-mu^2 / (2 sigma2))

    The value is positive and at most 1 (reached only by vacuum-limited
    states with no displacement).
    """
    return math.exp(-state.mu * state.mu / (2.0 * state.sigma2)) / (2.0 * state.sigma2)
