"""Resolution and sensitivity analysis of parity-based phase estimation.

This module turns parity-versus-phase data into metrological statements:
feature widths from model fits, phase sensitivity curves from error
propagation through the measured slope, comparisons against the Cramer-Rao
bound, the resolution/sensitivity trade of the threshold estimator as a
function of its acceptance radius, and receiver operating characteristics
for phase-offset detection.

Sensitivities are quoted per single sample throughout (see
`darkport.estimators`); averaging ``n`` samples improves any of them by
``sqrt(n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq, least_squares

from .errors import (
    DomainError,
    FitFailureError,
    SensitivityDivergenceError,
)
from .estimators import (
    ERROR_MODELS,
    bernoulli_std_error,
    rician_cdf,
    rician_sf,
)
from .interferometer import (
    LN2,
    InterferometerConfig,
    parity_vs_phase,
    snr_at_time,
    theoretical_fwhm,
)
from .states import _require_finite

GAUSSIAN_FWHM_FACTOR = 2.0 * math.sqrt(2.0 * LN2)


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Parity-type values tabulated against interferometer phase.

    ``values`` and ``std_errors`` follow the per-sample error convention.
    ``method`` records how the values were produced ("ml", "threshold" or
    "theory"); the remaining fields snapshot the operating point so that
    downstream fits know the extinction floor and true noise scale.
    """

    phases: np.ndarray
    values: np.ndarray
    std_errors: np.ndarray
    method: str
    n_samples: int
    repeats: int
    snr: float
    n_th: float
    extinction: float
    seed: int | None = None
    radius_over_sigma: float | None = None
    error_model: str | None = None

    def __post_init__(self) -> None:
        phases = np.ascontiguousarray(self.phases, dtype=np.float64)
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        errors = np.ascontiguousarray(self.std_errors, dtype=np.float64)
        if phases.ndim != 1 or phases.shape != values.shape or phases.shape != errors.shape:
            raise DomainError("phases, values and std_errors must be equal-length 1-d arrays")
        if phases.shape[0] < 2:
            raise DomainError("a sweep needs at least 2 phase points")
        if not np.all(np.diff(phases) > 0.0):
            raise DomainError("phases must be strictly increasing")
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "std_errors", errors)

    def __len__(self) -> int:
        return self.phases.shape[0]


@dataclass(frozen=True, eq=False)
class SensitivityCurve:
    """Per-sample phase sensitivity tabulated against phase.

    Entries are ``inf`` where the response slope vanishes (at the feature
    center and far wings); `minimum` skips those.
    """

    phases: np.ndarray
    delta_phi: np.ndarray
    method: str

    def minimum(self) -> tuple[float, float]:
        """Phase and value of the best (smallest) finite sensitivity."""
        finite = np.isfinite(self.delta_phi)
        if not np.any(finite):
            raise SensitivityDivergenceError("no finite sensitivity anywhere on the curve")
        idx = np.argmin(np.where(finite, self.delta_phi, np.inf))
        return float(self.phases[idx]), float(self.delta_phi[idx])


@dataclass(frozen=True)
class ResolutionFit:
    """Interferometer model parameters recovered from one sweep."""

    n_c: float
    n_th: float
    snr: float
    fwhm: float
    peak_value: float
    residual_rms: float
    n_points: int


def cr_bound(snr: float) -> float:
    """Cramer-Rao phase sensitivity bound per sample, ``sqrt(2 / snr)``.

    No unbiased estimator acting on single dark-port samples can beat this,
    regardless of how the samples are reduced to a phase estimate.
    """
    snr = _require_finite("snr", snr)
    if snr <= 0.0:
        raise DomainError(f"snr must be > 0, got {snr}")
    return math.sqrt(2.0 / snr)


def sensitivity_from_curve(sweep: SweepResult) -> SensitivityCurve:
    """Propagate a sweep's error bars through its measured slope.

    The slope comes from second-order central differences on the tabulated
    values (one-sided at the ends), so no model is assumed.  Where the
    slope is exactly zero the sensitivity is reported as ``inf``.
    """
    slope = np.gradient(sweep.values, sweep.phases)
    delta = np.full_like(slope, np.inf)
    nonzero = slope != 0.0
    delta[nonzero] = sweep.std_errors[nonzero] / np.abs(slope[nonzero])
    return SensitivityCurve(phases=sweep.phases, delta_phi=delta, method=sweep.method)


def ml_sensitivity_theory(snr: float, phi):
    """Per-sample sensitivity of the maximum-likelihood parity readout.

        delta_phi(phi) = 2 sqrt(1 + snr^2 sin^4(phi/2)) / (snr |sin phi|)

    This propagates the full Cramer-Rao error of the parity value (see
    `darkport.estimators.fisher_parity_error`) through the slope of the
    ideal response; its minimum over phase is `ml_sensitivity_theory_min`
    and approaches the Cramer-Rao bound as ``1 + 1/(2 snr)`` for large snr.

    ``phi`` may be a scalar or array; entries where the slope vanishes are
    ``inf`` for arrays, while a scalar stationary point raises
    `SensitivityDivergenceError`.
    """
    snr = _require_finite("snr", snr)
    if snr <= 0.0:
        raise DomainError(f"snr must be > 0, got {snr}")
    phi_arr = np.asarray(phi, dtype=np.float64)
    s = np.sin(0.5 * phi_arr)
    denom = snr * np.abs(np.sin(phi_arr))
    out = np.full_like(phi_arr, np.inf, dtype=np.float64)
    ok = denom > 0.0
    out[ok] = 2.0 * np.sqrt(1.0 + (snr * s[ok] ** 2) ** 2) / denom[ok]
    if phi_arr.ndim == 0:
        if not np.isfinite(out):
            raise SensitivityDivergenceError(
                f"response slope vanishes at phi = {float(phi_arr)}"
            )
        return float(out)
    return out


def ml_sensitivity_theory_min(snr: float) -> float:
    """Best per-sample sensitivity of the maximum-likelihood readout.

        min over phi = sqrt((2 / snr^2) (1 + sqrt(1 + snr^2)))

    Exact minimum of `ml_sensitivity_theory` over phase.
    """
    snr = _require_finite("snr", snr)
    if snr <= 0.0:
        raise DomainError(f"snr must be > 0, got {snr}")
    return math.sqrt((2.0 / (snr * snr)) * (1.0 + math.sqrt(1.0 + snr * snr)))


def _threshold_p(alpha: float, b) -> np.ndarray | float:
    """Circle probability in noise units: displacement ``b``, radius ``alpha``."""
    return rician_cdf(np.maximum(b, 0.0), 1.0, alpha)


def _threshold_dp_db(alpha: float, b: float) -> float:
    """Central-difference derivative of the circle probability in ``b``."""
    h = 1e-6 * max(1.0, abs(b))
    lo = max(b - h, 0.0)
    hi = b + h
    p_hi = _threshold_p(alpha, hi)
    p_lo = _threshold_p(alpha, lo)
    return (p_hi - p_lo) / (hi - lo)


def threshold_sensitivity_theory(
    snr: float,
    phi,
    radius_over_sigma: float,
    error_model: str = "exact-bernoulli",
):
    """Per-sample sensitivity of the threshold readout at given phase.

    The acceptance probability is the Rician circle probability of the
    phase-dependent displacement; its per-sample fluctuation (under the
    chosen error model) divided by the phase slope gives the sensitivity.
    The slope in the displacement is evaluated by central differences, and
    the displacement-versus-phase factor analytically.

    Array ``phi`` yields ``inf`` at stationary points; a scalar stationary
    point raises `SensitivityDivergenceError`.
    """
    snr = _require_finite("snr", snr)
    if snr <= 0.0:
        raise DomainError(f"snr must be > 0, got {snr}")
    alpha = _require_finite("radius_over_sigma", radius_over_sigma)
    if alpha <= 0.0:
        raise DomainError(f"radius_over_sigma must be > 0, got {alpha}")
    if error_model not in ERROR_MODELS:
        raise DomainError(f"error_model must be one of {ERROR_MODELS}, got {error_model!r}")
    phi_arr = np.asarray(phi, dtype=np.float64)
    scalar = phi_arr.ndim == 0
    flat = np.atleast_1d(phi_arr).ravel()
    out = np.full(flat.shape, np.inf)
    root_two_snr = math.sqrt(2.0 * snr)
    for i, ph in enumerate(flat):
        b = root_two_snr * abs(math.sin(0.5 * ph))
        db_dphi = 0.5 * root_two_snr * math.cos(0.5 * ph) * _sign(math.sin(0.5 * ph))
        slope = _threshold_dp_db(alpha, b) * db_dphi
        if slope == 0.0:
            continue
        p = float(_threshold_p(alpha, b))
        out[i] = bernoulli_std_error(p, error_model) / abs(slope)
    if scalar:
        if not np.isfinite(out[0]):
            raise SensitivityDivergenceError(
                f"acceptance-probability slope vanishes at phi = {float(phi_arr)}"
            )
        return float(out[0])
    return out.reshape(phi_arr.shape)


def _sign(x: float) -> float:
    if x > 0.0:
        return 1.0
    if x < 0.0:
        return -1.0
    return 0.0


def theoretical_sweep(
    config: InterferometerConfig,
    phases,
    t: float | None = None,
) -> SweepResult:
    """Noise-free parity curve with ideal per-sample error bars.

    Values follow the closed-form dark-port response; error bars are the
    Cramer-Rao parity errors of an efficient estimator, so propagating this
    sweep through `sensitivity_from_curve` reproduces
    `ml_sensitivity_theory` up to finite-difference error.
    """
    phases = np.ascontiguousarray(phases, dtype=np.float64)
    values = parity_vs_phase(config, phases, t)
    sigma2 = config.sigma2
    n_c = config.n_c_at(t)
    mu2 = 2.0 * n_c * (np.sin(0.5 * phases) ** 2 + config.extinction)
    r = mu2 / sigma2
    errors = values * np.sqrt(1.0 + 0.25 * r * r)
    return SweepResult(
        phases=phases,
        values=np.asarray(values, dtype=np.float64),
        std_errors=errors,
        method="theory",
        n_samples=1,
        repeats=0,
        snr=snr_at_time(config, t) if t is not None else config.snr,
        n_th=config.n_th,
        extinction=config.extinction,
    )


def fit_parity_model(sweep: SweepResult, p0: tuple[float, float] | None = None) -> ResolutionFit:
    """Weighted fit of the dark-port response model to a sweep.

    The model has two parameters, the coherent photon number and the
    thermal occupation; the extinction floor is taken from the sweep
    metadata.  Weights are the reciprocal error bars.  Initial values are
    derived from the peak height and the half-maximum width of the data
    unless ``p0 = (n_c, n_th)`` is supplied.

    Raises `FitFailureError` when the data never fall to half the peak
    (the sweep span cannot constrain a width) or when the optimizer does
    not converge.
    """
    phases = sweep.phases
    values = sweep.values
    errors = np.where(sweep.std_errors > 0.0, sweep.std_errors, np.nan)
    if np.all(np.isnan(errors)):
        errors = np.ones_like(values)
    else:
        fill = float(np.nanmin(errors))
        errors = np.where(np.isnan(errors), fill, errors)
    eps = sweep.extinction

    if p0 is None:
        p0 = _initial_guess(phases, values, eps)
    n_c0, n_th0 = p0

    def model(params: np.ndarray) -> np.ndarray:
        n_c, n_th = params
        s2 = n_th + 0.5
        return np.exp(-n_c * (np.sin(0.5 * phases) ** 2 + eps) / s2) / (2.0 * s2)

    def residuals(params: np.ndarray) -> np.ndarray:
        return (model(params) - values) / errors

    def jacobian(params: np.ndarray) -> np.ndarray:
        n_c, n_th = params
        s2 = n_th + 0.5
        g = np.sin(0.5 * phases) ** 2 + eps
        m = np.exp(-n_c * g / s2) / (2.0 * s2)
        d_nc = m * (-g / s2)
        d_nth = m * (n_c * g - s2) / (s2 * s2)
        return np.column_stack([d_nc / errors, d_nth / errors])

    result = least_squares(
        residuals,
        x0=np.array([max(n_c0, 1e-12), max(n_th0, 0.0)]),
        jac=jacobian,
        bounds=(np.array([0.0, 0.0]), np.array([np.inf, np.inf])),
        xtol=1e-10,
        max_nfev=500,
    )
    if not result.success:
        raise FitFailureError(f"model fit did not converge: {result.message}")
    n_c, n_th = map(float, result.x)
    snr = n_c / (n_th + 0.5)
    try:
        fwhm = theoretical_fwhm(snr)
    except DomainError as exc:
        raise FitFailureError(
            f"fitted operating point resolves no feature (snr = {snr:.3g})"
        ) from exc
    peak = float(np.exp(-n_c * eps / (n_th + 0.5)) / (2.0 * (n_th + 0.5)))
    residual_rms = float(np.sqrt(np.mean(result.fun**2)))
    return ResolutionFit(
        n_c=n_c,
        n_th=n_th,
        snr=snr,
        fwhm=fwhm,
        peak_value=peak,
        residual_rms=residual_rms,
        n_points=len(sweep),
    )


def _initial_guess(phases: np.ndarray, values: np.ndarray, eps: float) -> tuple[float, float]:
    peak = float(np.max(values))
    if peak <= 0.0:
        raise FitFailureError("sweep values are not positive; nothing to fit")
    sigma2_0 = max(1.0 / (2.0 * peak), 0.5)
    half = 0.5 * peak
    below = values <= half
    if not np.any(below):
        raise FitFailureError(
            "sweep never falls to half its peak; span is too narrow to fit a width"
        )
    i_peak = int(np.argmax(values))
    phi_half = None
    for i in range(i_peak + 1, len(values)):
        if values[i] <= half:
            f = (values[i - 1] - half) / (values[i - 1] - values[i])
            phi_half = phases[i - 1] + f * (phases[i] - phases[i - 1])
            break
    if phi_half is None:
        for i in range(i_peak - 1, -1, -1):
            if values[i] <= half:
                f = (values[i + 1] - half) / (values[i + 1] - values[i])
                phi_half = phases[i + 1] - f * (phases[i + 1] - phases[i])
                break
    if phi_half is None:
        raise FitFailureError(
            "sweep never falls to half its peak; span is too narrow to fit a width"
        )
    half_width = abs(float(phi_half) - float(phases[i_peak]))
    if half_width <= 0.0:
        raise FitFailureError("degenerate half-maximum width in sweep data")
    n_c0 = sigma2_0 * LN2 / math.sin(0.5 * half_width) ** 2
    return n_c0, sigma2_0 - 0.5


def loglog_slope(x, y) -> float:
    """Least-squares slope of ``log10 y`` against ``log10 x``."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1 or x.shape[0] < 2:
        raise DomainError("x and y must be equal-length 1-d arrays of at least 2 points")
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise DomainError("log-log slope requires strictly positive data")
    return float(np.polyfit(np.log10(x), np.log10(y), 1)[0])


def _golden_min(f: Callable[[float], float], lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section minimum of a unimodal function on ``[lo, hi]``.

    Returns ``(x, f(x))``.  Converges to an interval of width ``tol``; for
    monotone functions it lands on the appropriate boundary.
    """
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc = f(c)
    fd = f(d)
    while (b - a) > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def threshold_factor(alpha: float, error_model: str = "exact-bernoulli") -> float:
    """Best sensitivity of the threshold readout relative to the bound.

    Works in the universal variables (displacement and radius in noise
    units), valid in the high-snr limit where the feature sits at small
    phase.  The factor is the minimum over displacement of the acceptance
    probability's per-sample fluctuation divided by its slope, normalized
    so the Cramer-Rao bound is 1.  It decreases monotonically with the
    acceptance radius toward an asymptote of about 1.25 for the
    exact-bernoulli error model.
    """
    alpha = _require_finite("radius alpha", alpha)
    if alpha <= 0.0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    if error_model not in ERROR_MODELS:
        raise DomainError(f"error_model must be one of {ERROR_MODELS}, got {error_model!r}")

    def objective(b: float) -> float:
        slope = _threshold_dp_db(alpha, b)
        if slope == 0.0:
            return math.inf
        p = float(_threshold_p(alpha, b))
        return bernoulli_std_error(p, error_model) / abs(slope)

    _, best = _golden_min(objective, 1e-3, alpha + 8.0, tol=1e-5)
    return best


@dataclass(frozen=True, eq=False)
class TradeoffCurve:
    """Resolution and sensitivity of the threshold readout versus radius.

    ``resolution_norm`` is the feature width expressed as a Gaussian
    equivalent standard deviation (width divided by ``2 sqrt(2 ln 2)``) in
    units of the Cramer-Rao bound; ``sensitivity_over_cr`` is the best
    sensitivity in the same units.  Both are evaluated at the stated snr.
    """

    a_over_sigma: np.ndarray
    resolution_norm: np.ndarray
    sensitivity_over_cr: np.ndarray
    snr: float
    error_model: str

    def crossing(self) -> float:
        """Radius where the two normalized branches intersect."""
        diff = self.resolution_norm - self.sensitivity_over_cr
        sign_change = np.nonzero(np.diff(np.sign(diff)) != 0)[0]
        if sign_change.size == 0:
            raise DomainError("branches do not cross on the evaluated radius grid")
        i = int(sign_change[0])
        x0, x1 = self.a_over_sigma[i], self.a_over_sigma[i + 1]
        y0, y1 = diff[i], diff[i + 1]
        return float(x0 - y0 * (x1 - x0) / (y1 - y0))


def threshold_resolution_fwhm(alpha: float, snr: float) -> float:
    """Phase width at half maximum of the threshold response at radius ``alpha``.

    Solved from the universal acceptance probability: the half-maximum
    displacement in noise units is mapped back through the phase-to-
    displacement relation of the interferometer.
    """
    alpha = _require_finite("radius alpha", alpha)
    snr = _require_finite("snr", snr)
    if alpha <= 0.0 or snr <= 0.0:
        raise DomainError("alpha and snr must be > 0")
    p0 = float(_threshold_p(alpha, 0.0))
    target = 0.5 * p0

    def g(b: float) -> float:
        return float(_threshold_p(alpha, b)) - target

    b_hi = 1.0
    while g(b_hi) > 0.0:
        b_hi *= 2.0
        if b_hi > 1e4:
            raise DomainError("no half-maximum crossing found in displacement")
    b_half = brentq(g, 0.0, b_hi, xtol=1e-12, rtol=1e-12)
    arg = b_half / math.sqrt(2.0 * snr)
    if arg >= 1.0:
        raise DomainError(f"feature width exceeds a fringe at snr = {snr}")
    return 4.0 * math.asin(arg)


def tradeoff_curve(
    snr: float = 1e6,
    a_over_sigma=None,
    error_model: str = "exact-bernoulli",
) -> TradeoffCurve:
    """Evaluate both branches of the radius trade for the threshold readout.

    Small radii reproduce the ideal parity width (normalized resolution 1)
    but suffer counting noise; large radii approach the best achievable
    sensitivity factor while the feature they resolve broadens.  The two
    normalized branches cross near ``a / sigma = 1.7``.
    """
    if a_over_sigma is None:
        a_over_sigma = np.geomspace(0.2, 12.0, 121)
    a = np.ascontiguousarray(a_over_sigma, dtype=np.float64)
    if a.ndim != 1 or np.any(a <= 0.0):
        raise DomainError("a_over_sigma must be a 1-d array of positive radii")
    cr = cr_bound(snr)
    res = np.empty_like(a)
    sens = np.empty_like(a)
    for i, alpha in enumerate(a):
        res[i] = threshold_resolution_fwhm(alpha, snr) / (GAUSSIAN_FWHM_FACTOR * cr)
        sens[i] = _threshold_sensitivity_over_cr(alpha, snr, error_model)
    return TradeoffCurve(
        a_over_sigma=a,
        resolution_norm=res,
        sensitivity_over_cr=sens,
        snr=snr,
        error_model=error_model,
    )


def _threshold_sensitivity_over_cr(alpha: float, snr: float, error_model: str) -> float:
    """Best threshold sensitivity at radius ``alpha``, in Cramer-Rao units."""
    root_two_snr = math.sqrt(2.0 * snr)

    def objective(b: float) -> float:
        slope_b = _threshold_dp_db(alpha, b)
        if slope_b == 0.0:
            return math.inf
        s = b / root_two_snr
        if s >= 1.0:
            return math.inf
        cos_half = math.sqrt(1.0 - s * s)
        p = float(_threshold_p(alpha, b))
        delta_phi = bernoulli_std_error(p, error_model) / (
            abs(slope_b) * 0.5 * root_two_snr * cos_half
        )
        return delta_phi

    _, best = _golden_min(objective, 1e-3, alpha + 8.0, tol=1e-5)
    return best / cr_bound(snr)


def min_sensitivity_factor(
    snr: float = 1e6,
    a_bracket: tuple[float, float] = (0.2, 20.0),
) -> dict[str, float]:
    """Best achievable threshold sensitivity factor for each error model.

    Nested golden-section search: the outer stage scans the acceptance
    radius over ``a_bracket`` (in noise units) and the inner stage finds
    the optimal displacement at each radius.  The sensitivity improves
    monotonically with radius toward an asymptote, so the outer search
    settles at the large-radius edge of the bracket; the bracket is part
    of the reported quantity's definition.

    Returns a mapping from error model name to its factor (sensitivity in
    Cramer-Rao units).
    """
    lo, hi = a_bracket
    lo = _require_finite("a_bracket[0]", lo)
    hi = _require_finite("a_bracket[1]", hi)
    if not 0.0 < lo < hi:
        raise DomainError(f"a_bracket must satisfy 0 < lo < hi, got {a_bracket}")
    out: dict[str, float] = {}
    for model in ERROR_MODELS:
        _, best = _golden_min(
            lambda alpha: _threshold_sensitivity_over_cr(alpha, snr, model),
            lo,
            hi,
            tol=1e-4 * (hi - lo),
        )
        out[model] = best
    return out


@dataclass(frozen=True, eq=False)
class ROCCurve:
    """Receiver operating characteristic for single-sample offset detection.

    The detection statistic is the sample's radial distance from the
    phase-space origin: radii above the acceptance radius vote for a phase
    offset.  Sweeping the radius traces the curve from ``(1, 1)`` (accept
    everything) toward ``(0, 0)``.
    """

    ad_over_cr: float
    a_over_sigma: np.ndarray
    fpr: np.ndarray
    tpr: np.ndarray

    def auc(self) -> float:
        """Area under the curve (trapezoidal, over the evaluated grid)."""
        order = np.argsort(self.fpr)
        return float(np.trapezoid(self.tpr[order], self.fpr[order]))


def roc_curve(
    ad_over_cr: float,
    a_over_sigma=None,
    snr: float | None = None,
) -> ROCCurve:
    """Detectability of a phase offset of ``ad_over_cr`` Cramer-Rao units.

    In the high-snr limit the offset maps to a displacement of exactly
    ``ad_over_cr`` noise units, making the curve universal; passing ``snr``
    evaluates the exact (fringe-aware) displacement instead.
    """
    ad = _require_finite("ad_over_cr", ad_over_cr)
    if ad <= 0.0:
        raise DomainError(f"ad_over_cr must be > 0, got {ad}")
    if a_over_sigma is None:
        a_over_sigma = np.linspace(0.0, 14.0, 701)
    a = np.ascontiguousarray(a_over_sigma, dtype=np.float64)
    if a.ndim != 1 or np.any(a < 0.0):
        raise DomainError("a_over_sigma must be a 1-d array of radii >= 0")
    if snr is None:
        b1 = ad
    else:
        snr = _require_finite("snr", snr)
        if snr <= 0.0:
            raise DomainError(f"snr must be > 0, got {snr}")
        phi = ad * cr_bound(snr)
        b1 = math.sqrt(2.0 * snr) * abs(math.sin(0.5 * phi))
    fpr = np.asarray(rician_sf(0.0, 1.0, a), dtype=np.float64)
    tpr = np.asarray(rician_sf(b1, 1.0, a), dtype=np.float64)
    return ROCCurve(ad_over_cr=ad, a_over_sigma=a, fpr=fpr, tpr=tpr)
