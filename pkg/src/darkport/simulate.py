"""Monte Carlo parity sweeps across interferometer phase.

Each phase point is an independent work item: it draws ``repeats`` I/Q
ensembles of ``n_samples`` each from the dark-port state at that phase,
reduces every ensemble to a parity-type value with the chosen estimator,
and reports the mean over repeats together with the empirical spread
(scaled to the per-sample convention).  Randomness is keyed per work item
through the chunked streams in `darkport._streams`, so results are
byte-for-byte identical no matter how many worker threads execute the
items or in what order they finish.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import backend
from ._streams import STREAM_SWEEP, standard_normals
from .errors import DomainError
from .estimators import ThresholdConfig, bernoulli_std_error
from .interferometer import InterferometerConfig, output_state, snr_at_time
from .metrology import SweepResult


def simulate_parity_sweep(
    config: InterferometerConfig,
    phases,
    *,
    method: str = "ml",
    n_samples: int = 200,
    repeats: int = 200,
    t: float | None = None,
    seed: int = 0,
    threshold: ThresholdConfig | float | None = None,
    workers: int = 1,
) -> SweepResult:
    """Simulate a parity-versus-phase sweep.

    Parameters
    ----------
    config:
        Interferometer operating point; sets the state at each phase.
    phases:
        Strictly increasing phase grid in radians.
    method:
        ``"ml"`` for the maximum-likelihood estimator or ``"threshold"``
        for the acceptance-circle estimator.
    n_samples, repeats:
        Ensemble size and number of repeated ensembles per phase point.
    t:
        Integration time; None means the reference time of ``config``.
    seed:
        Stream seed.  The same seed with the same grid reproduces the
        sweep exactly, independent of ``workers``.
    threshold:
        For the threshold method: a full `ThresholdConfig`, or a bare
        radius in noise units (the calibrated noise scale is then taken
        from ``config``).  Ignored by the maximum-likelihood method.
    workers:
        Worker threads executing phase points concurrently.

    Returns a `SweepResult` whose error bars are the spread of the repeat
    values scaled by ``sqrt(n_samples)`` (per-sample convention).  With a
    single repeat the estimator's own formula error is reported instead.
    """
    phases = np.ascontiguousarray(phases, dtype=np.float64)
    if phases.ndim != 1 or phases.shape[0] < 2:
        raise DomainError("phases must be a 1-d grid of at least 2 points")
    if method not in ("ml", "threshold"):
        raise DomainError(f'method must be "ml" or "threshold", got {method!r}')
    if n_samples < 2:
        raise DomainError(f"n_samples must be >= 2, got {n_samples}")
    if repeats < 1:
        raise DomainError(f"repeats must be >= 1, got {repeats}")
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")

    threshold_config: ThresholdConfig | None = None
    if method == "threshold":
        if threshold is None:
            raise DomainError("the threshold method needs a threshold radius or config")
        if isinstance(threshold, ThresholdConfig):
            threshold_config = threshold
        else:
            threshold_config = ThresholdConfig(
                radius_over_sigma=float(threshold),
                sigma=math.sqrt(config.sigma2),
            )

    def run_item(i: int) -> tuple[float, float]:
        state = output_state(config, float(phases[i]), t)
        normals = standard_normals(
            seed, STREAM_SWEEP, i, repeats * n_samples, dim=2
        ).reshape(repeats, n_samples, 2)
        x0, p0 = state.center
        xy = normals * math.sqrt(state.sigma2)
        xy[:, :, 0] += x0
        xy[:, :, 1] += p0
        if method == "ml":
            cx, cy, s2 = backend.batch_ml_moments(xy)
            values = np.exp(-(cx**2 + cy**2) / (2.0 * s2)) / (2.0 * s2)
        else:
            counts = backend.batch_radial_count(xy, threshold_config.radius)
            values = counts / float(n_samples)
        mean = float(values.mean())
        if repeats >= 2:
            err = float(values.std(ddof=1)) * math.sqrt(n_samples)
        elif method == "threshold":
            err = bernoulli_std_error(mean, threshold_config.error_model)
        else:
            r = float((cx[0] ** 2 + cy[0] ** 2) / s2[0])
            err = mean * math.sqrt(1.0 + r)
        return mean, err

    indices = range(phases.shape[0])
    if workers == 1:
        results = [run_item(i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_item, indices))

    values = np.array([v for v, _ in results])
    errors = np.array([e for _, e in results])
    return SweepResult(
        phases=phases,
        values=values,
        std_errors=errors,
        method=method,
        n_samples=n_samples,
        repeats=repeats,
        snr=snr_at_time(config, t) if t is not None else config.snr,
        n_th=config.n_th,
        extinction=config.extinction,
        seed=int(seed),
        radius_over_sigma=(
            threshold_config.radius_over_sigma if threshold_config is not None else None
        ),
        error_model=(
            threshold_config.error_model if threshold_config is not None else None
        ),
    )
