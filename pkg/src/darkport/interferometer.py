"""Dark-port response of a two-arm microwave interferometer.

The device under study splits a coherent tone across two arms, applies a
relative phase ``phi``, and recombines onto a nominally dark output port.
The coherent power leaking into that port scales as ``sin^2(phi/2)``, plus a
small phase-independent floor set by the interferometer's extinction.  The
thermal background of the port does not interfere and is phase independent.

The displacement angle of the dark-port state is ``phi / 2``, i.e. the
output amplitude is ``mu0 * sin(phi/2) * exp(i phi/2)`` for a suitable input
scale ``mu0``; only the magnitude matters for parity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoSuperResolvedFeatureError
from .states import VACUUM_VARIANCE, GaussianState, _require_finite

LN2 = math.log(2.0)


@dataclass(frozen=True)
class InterferometerConfig:
    """Operating point of the interferometer and its dark port.

    Parameters
    ----------
    n_c_total:
        Mean coherent photon number reaching the dark port at full
        constructive interference (``phi = pi``) after the reference
        integration time ``t_ref``.
    n_th:
        Mean thermal occupation of the dark-port mode.  Fixed by the
        environment; it does not grow with integration time because the
        detection bandwidth narrows as the record lengthens while the
        thermal spectral density stays flat.
    extinction:
        Fraction of the coherent power that leaks into the dark port even
        at perfect destructive interference (linear, not decibels).  Must
        satisfy ``0 <= extinction < 1``.
    t_ref:
        Reference integration time in seconds for which ``n_c_total`` is
        quoted.  Coherent photon number grows linearly in time.
    """

    n_c_total: float
    n_th: float
    extinction: float = 0.0
    t_ref: float = 25e-9

    def __post_init__(self) -> None:
        n_c = _require_finite("n_c_total", self.n_c_total)
        n_t = _require_finite("n_th", self.n_th)
        eps = _require_finite("extinction", self.extinction)
        t_ref = _require_finite("t_ref", self.t_ref)
        if n_c < 0.0:
            raise DomainError(f"n_c_total must be >= 0, got {n_c}")
        if n_t < 0.0:
            raise DomainError(f"n_th must be >= 0, got {n_t}")
        if not 0.0 <= eps < 1.0:
            raise DomainError(f"extinction must lie in [0, 1), got {eps}")
        if t_ref <= 0.0:
            raise DomainError(f"t_ref must be > 0, got {t_ref}")
        object.__setattr__(self, "n_c_total", n_c)
        object.__setattr__(self, "n_th", n_t)
        object.__setattr__(self, "extinction", eps)
        object.__setattr__(self, "t_ref", t_ref)

    @classmethod
    def with_extinction_db(
        cls,
        n_c_total: float,
        n_th: float,
        extinction_db: float,
        t_ref: float = 25e-9,
    ) -> "InterferometerConfig":
        """Build a config quoting extinction as positive decibels.

        ``extinction_db = 90`` means the leaked power is 90 dB below the
        full constructive-interference power, i.e. a linear fraction 1e-9.
        """
        extinction_db = _require_finite("extinction_db", extinction_db)
        if extinction_db < 0.0:
            raise DomainError(
                f"extinction_db is a suppression and must be >= 0, got {extinction_db}"
            )
        return cls(
            n_c_total=n_c_total,
            n_th=n_th,
            extinction=10.0 ** (-extinction_db / 10.0),
            t_ref=t_ref,
        )

    @property
    def sigma2(self) -> float:
        """Per-quadrature variance of the dark-port mode."""
        return self.n_th + VACUUM_VARIANCE

    @property
    def snr(self) -> float:
        """Displacement signal-to-noise ratio at the reference time."""
        return self.n_c_total / self.sigma2

    def n_c_at(self, t: float | None = None) -> float:
        """Coherent photon number available after integration time ``t``."""
        if t is None:
            return self.n_c_total
        t = _require_finite("t", t)
        if t <= 0.0:
            raise DomainError(f"integration time must be > 0, got {t}")
        return self.n_c_total * (t / self.t_ref)


def snr_at_time(config: InterferometerConfig, t: float) -> float:
    """Signal-to-noise ratio after integration time ``t``.

    Grows linearly in ``t`` because the coherent photon number accumulates
    while the thermal occupation is bandwidth-limited and constant.
    """
    return config.n_c_at(t) / config.sigma2


def output_state(
    config: InterferometerConfig, phi: float, t: float | None = None
) -> GaussianState:
    """Gaussian state at the dark port for interferometer phase ``phi``.

    The coherent photon number delivered to the port is

        n_c(t) * (sin^2(phi/2) + extinction)

    and the displacement angle equals ``phi / 2``.
    """
    phi = _require_finite("phi", phi)
    n_c = config.n_c_at(t) * (math.sin(0.5 * phi) ** 2 + config.extinction)
    return GaussianState(
        mu=math.sqrt(2.0 * n_c),
        theta=0.5 * phi,
        sigma2=config.sigma2,
    )


def parity_vs_phase(config: InterferometerConfig, phi, t: float | None = None):
    """Parity expectation at the dark port as a function of phase.

    ``phi`` may be a scalar or an array.  Equivalent to evaluating
    `parity_of_state(output_state(config, phi, t))` pointwise:

        <parity>(phi) = (1 / (2 sigma2))
                        * exp(-n_c(t) (sin^2(phi/2) + extinction) / sigma2)

    The peak sits at ``phi = 0`` where destructive interference empties the
    port of signal; its height ``exp(-n_c eps / sigma2) / (2 sigma2)`` is
    set by the thermal occupation and the extinction floor alone.
    """
    phi = np.asarray(phi, dtype=float)
    if not np.all(np.isfinite(phi)):
        raise DomainError("phi must be finite")
    s2 = config.sigma2
    n_c = config.n_c_at(t)
    exponent = -n_c * (np.sin(0.5 * phi) ** 2 + config.extinction) / s2
    out = np.exp(exponent) / (2.0 * s2)
    if out.ndim == 0:
        return float(out)
    return out


def peak_parity(config: InterferometerConfig, t: float | None = None) -> float:
    """Parity at the dark fringe center, ``phi = 0``."""
    return float(parity_vs_phase(config, 0.0, t))


def theoretical_fwhm(snr: float) -> float:
    """Full width at half maximum of the central parity feature, in radians.

        fwhm = 4 * arcsin(sqrt(ln 2 / snr))

    Defined only for ``snr > ln 2``; below that the parity never falls to
    half its peak within a fringe and `NoSuperResolvedFeatureError` is
    raised.  For large ``snr`` the width shrinks as ``4 sqrt(ln2 / snr)``,
    i.e. as one over the square root of the coherent photon number.
    """
    snr = _require_finite("snr", snr)
    if snr <= LN2:
        raise NoSuperResolvedFeatureError(
            f"no half-max crossing exists for snr <= ln(2); got snr = {snr}"
        )
    return 4.0 * math.asin(math.sqrt(LN2 / snr))
