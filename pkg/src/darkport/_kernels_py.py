"""NumPy implementations of the numerical kernels.

This module is the portable twin of the compiled extension ``_kernels``;
`darkport.backend` picks whichever is available at import time.  Both expose
the same three functions with identical semantics and near-identical numerics,
and the test suite cross-checks them against each other.

The kernels are the hot spots of the package: the Rician circle probability
evaluated by series summation, and the per-repeat reductions (moments and
radial counts) at the core of every Monte Carlo sweep.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"

#: Poisson terms smaller than this (absolute) are dropped from the series.
_TERM_TOL = 1e-18


def _poisson_window(lam: float) -> tuple[int, list[float]]:
    """Poisson pmf values around the mode, down to negligible mass.

    Returns ``(k0, pmf)`` with ``pmf[i] = P(K = k0 + i)`` for ``K`` Poisson
    with rate ``lam``.  Terms are built by the two-sided recurrence from the
    mode (whose log is taken once through ``lgamma``), which is stable for
    any rate, and truncated once they fall below an absolute tolerance well
    under the target accuracy of the callers.
    """
    if lam <= 0.0:
        return 0, [1.0]
    m = int(lam)
    pm = math.exp(-lam + m * math.log(lam) - math.lgamma(m + 1.0))
    upper = [pm]
    term = pm
    k = m
    while term >= _TERM_TOL or k <= lam:
        k += 1
        term *= lam / k
        upper.append(term)
        if k > lam + 60.0 + 12.0 * math.sqrt(lam + 1.0):
            break
    lower: list[float] = []
    term = pm
    k = m
    while k > 0:
        term *= k / lam
        k -= 1
        lower.append(term)
        if term < _TERM_TOL and k < lam:
            break
    lower.reverse()
    return m - len(lower), lower + upper


def _rician_cdf_sf_scalar(b: float, x: float) -> tuple[float, float]:
    """Circle probability of a unit-variance Rice variable, both tails.

    For ``R`` the radial distance of a sample from an isotropic Gaussian of
    unit per-axis variance displaced by ``b``, returns
    ``(P(R <= x), P(R > x))``.

    Uses the double-Poisson identity: with independent ``K ~ Pois(b^2/2)``
    and ``J ~ Pois(x^2/2)``,

        P(R <= x) = P(K < J),    P(R > x) = P(K >= J).

    Both tails come from the same pass over directly summed pmf windows, so
    neither suffers the ``1 - p`` cancellation when one tail is tiny.
    """
    if x <= 0.0:
        return 0.0, 1.0
    k0, pk_list = _poisson_window(0.5 * b * b)
    j0, pj_list = _poisson_window(0.5 * x * x)
    pk = np.asarray(pk_list)
    pj = np.asarray(pj_list)
    # P(K <= k0 + i) and P(K >= k0 + i), within the window
    below = np.cumsum(pk)
    above = np.cumsum(pk[::-1])[::-1]
    jj = j0 + np.arange(len(pj))
    idx = jj - 1 - k0
    cdf_terms = np.where(
        idx < 0, 0.0, below[np.clip(idx, 0, len(pk) - 1)]
    )
    cdf_terms = np.where(idx >= len(pk), below[-1], cdf_terms)
    idx2 = jj - k0
    sf_terms = np.where(
        idx2 >= len(pk), 0.0, above[np.clip(idx2, 0, len(pk) - 1)]
    )
    sf_terms = np.where(idx2 < 0, above[0], sf_terms)
    cdf = float(np.dot(pj, cdf_terms))
    sf = float(np.dot(pj, sf_terms))
    return min(cdf, 1.0), min(sf, 1.0)


def rician_cdf_sf(b: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized Rician circle probability.

    ``b`` and ``x`` are one-dimensional arrays of equal length holding the
    displacement and radius in units of the per-axis standard deviation.
    Returns ``(cdf, sf)`` arrays of the same length.
    """
    b = np.ascontiguousarray(b, dtype=np.float64)
    x = np.ascontiguousarray(x, dtype=np.float64)
    if b.ndim != 1 or x.ndim != 1 or b.shape != x.shape:
        raise ValueError("b and x must be 1-d arrays of equal length")
    cdf = np.empty_like(b)
    sf = np.empty_like(b)
    for i in range(b.shape[0]):
        cdf[i], sf[i] = _rician_cdf_sf_scalar(b[i], x[i])
    return cdf, sf


def batch_ml_moments(xy: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-repeat Gaussian sufficient statistics.

    ``xy`` has shape ``(repeats, n, 2)``.  For each repeat returns the sample
    centroid ``(cx, cy)`` and the pooled per-quadrature variance

        s2 = sum((x - cx)^2 + (y - cy)^2) / (2 n)

    which is the maximum-likelihood variance of an isotropic Gaussian.
    """
    xy = np.ascontiguousarray(xy, dtype=np.float64)
    if xy.ndim != 3 or xy.shape[2] != 2 or xy.shape[1] < 1:
        raise ValueError("xy must have shape (repeats, n, 2) with n >= 1")
    n = xy.shape[1]
    cx = xy[:, :, 0].mean(axis=1)
    cy = xy[:, :, 1].mean(axis=1)
    dx = xy[:, :, 0] - cx[:, None]
    dy = xy[:, :, 1] - cy[:, None]
    s2 = (np.einsum("ij,ij->i", dx, dx) + np.einsum("ij,ij->i", dy, dy)) / (2.0 * n)
    return cx, cy, s2


def batch_radial_count(xy: np.ndarray, radius: float) -> np.ndarray:
    """Number of samples per repeat that land within ``radius`` of the origin.

    ``xy`` has shape ``(repeats, n, 2)``; the boundary circle is inclusive.
    """
    xy = np.ascontiguousarray(xy, dtype=np.float64)
    if xy.ndim != 3 or xy.shape[2] != 2:
        raise ValueError("xy must have shape (repeats, n, 2)")
    if radius < 0.0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    r2 = xy[:, :, 0] ** 2 + xy[:, :, 1] ** 2
    return (r2 <= radius * radius).sum(axis=1).astype(np.int64)
