# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the numerical kernels.

Mirror of `darkport._kernels_py` (see that module for the algorithm notes);
`darkport.backend` picks whichever of the two imported.  The hot loops here
run in C: the double-Poisson series for the Rician circle probability and
the per-repeat Monte Carlo reductions.
"""

from libc.math cimport exp, lgamma, log, sqrt
from libc.stdlib cimport free, malloc

import numpy as np

BACKEND_NAME = "compiled"

cdef double TERM_TOL = 1e-18


cdef int _poisson_window(double lam, double* buf, int cap, int* k0_out) nogil:
    """Fill ``buf`` with Poisson pmf values around the mode.

    Returns the number of entries written (0 on overflow) and stores the
    first index in ``k0_out``.  Terms below TERM_TOL on both sides of the
    mode are dropped.
    """
    cdef int m, k, n_low, n_up, i
    cdef double pm, term
    if lam <= 0.0:
        buf[0] = 1.0
        k0_out[0] = 0
        return 1
    m = <int>lam
    pm = exp(-lam + m * log(lam) - lgamma(m + 1.0))
    # count and stage the lower side in reverse order at the end of buf
    term = pm
    k = m
    n_low = 0
    while k > 0:
        term *= k / lam
        k -= 1
        if cap - 1 - n_low < 0:
            return 0
        buf[cap - 1 - n_low] = term
        n_low += 1
        if term < TERM_TOL and k < lam:
            break
    # the staged block buf[cap-n_low .. cap-1] is ascending in k already
    # (deepest write was the smallest k); shift it down into place.  The
    # forward copy is safe even if the ranges overlap because every source
    # index exceeds its destination.
    for i in range(n_low):
        buf[i] = buf[cap - n_low + i]
    k0_out[0] = m - n_low
    # upper side
    buf[n_low] = pm
    n_up = 1
    term = pm
    k = m
    while term >= TERM_TOL or k <= lam:
        k += 1
        term *= lam / k
        if n_low + n_up >= cap:
            return 0
        buf[n_low + n_up] = term
        n_up += 1
        if k > lam + 60.0 + 12.0 * sqrt(lam + 1.0):
            break
    return n_low + n_up


cdef void _rician_scalar(double b, double x, double* cdf_out, double* sf_out) nogil:
    cdef int CAP = 4096
    cdef double* pk = <double*>malloc(CAP * sizeof(double))
    cdef double* pj = <double*>malloc(CAP * sizeof(double))
    cdef double* below = <double*>malloc(CAP * sizeof(double))
    cdef double* above = <double*>malloc(CAP * sizeof(double))
    cdef int nk, nj, k0, j0, i, idx
    cdef double acc, cdf, sf, total
    if pk == NULL or pj == NULL or below == NULL or above == NULL:
        # fall back to degenerate output; the python wrapper validates inputs
        if pk != NULL: free(pk)
        if pj != NULL: free(pj)
        if below != NULL: free(below)
        if above != NULL: free(above)
        cdf_out[0] = -1.0
        sf_out[0] = -1.0
        return
    if x <= 0.0:
        cdf_out[0] = 0.0
        sf_out[0] = 1.0
        free(pk); free(pj); free(below); free(above)
        return
    nk = _poisson_window(0.5 * b * b, pk, CAP, &k0)
    nj = _poisson_window(0.5 * x * x, pj, CAP, &j0)
    if nk == 0 or nj == 0:
        cdf_out[0] = -1.0
        sf_out[0] = -1.0
        free(pk); free(pj); free(below); free(above)
        return
    acc = 0.0
    for i in range(nk):
        acc += pk[i]
        below[i] = acc
    acc = 0.0
    for i in range(nk - 1, -1, -1):
        acc += pk[i]
        above[i] = acc
    total = below[nk - 1]
    cdf = 0.0
    sf = 0.0
    for i in range(nj):
        idx = j0 + i - 1 - k0
        if idx >= nk:
            cdf += pj[i] * total
        elif idx >= 0:
            cdf += pj[i] * below[idx]
        idx = j0 + i - k0
        if idx < 0:
            sf += pj[i] * above[0]
        elif idx < nk:
            sf += pj[i] * above[idx]
    cdf_out[0] = cdf if cdf < 1.0 else 1.0
    sf_out[0] = sf if sf < 1.0 else 1.0
    free(pk); free(pj); free(below); free(above)


def rician_cdf_sf(b, x):
    """Vectorized Rician circle probability; see the fallback's docstring."""
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    if bv.shape[0] != xv.shape[0]:
        raise ValueError("b and x must be 1-d arrays of equal length")
    cdef Py_ssize_t n = bv.shape[0]
    cdf_arr = np.empty(n, dtype=np.float64)
    sf_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] cv = cdf_arr
    cdef double[::1] sv = sf_arr
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            _rician_scalar(bv[i], xv[i], &cv[i], &sv[i])
    if n and (np.min(cdf_arr) < 0.0 or np.min(sf_arr) < 0.0):
        raise MemoryError("rician series buffer overflow or allocation failure")
    return cdf_arr, sf_arr


def batch_ml_moments(xy):
    """Per-repeat centroid and pooled isotropic variance; see the fallback."""
    arr = np.ascontiguousarray(xy, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[1] < 1:
        raise ValueError("xy must have shape (repeats, n, 2) with n >= 1")
    cdef double[:, :, ::1] v = arr
    cdef Py_ssize_t reps = v.shape[0], n = v.shape[1]
    cx_arr = np.empty(reps, dtype=np.float64)
    cy_arr = np.empty(reps, dtype=np.float64)
    s2_arr = np.empty(reps, dtype=np.float64)
    cdef double[::1] cx = cx_arr, cy = cy_arr, s2 = s2_arr
    cdef Py_ssize_t r, j
    cdef double sx, sy, mx, my, dx, dy, acc
    with nogil:
        for r in range(reps):
            sx = 0.0
            sy = 0.0
            for j in range(n):
                sx += v[r, j, 0]
                sy += v[r, j, 1]
            mx = sx / n
            my = sy / n
            acc = 0.0
            for j in range(n):
                dx = v[r, j, 0] - mx
                dy = v[r, j, 1] - my
                acc += dx * dx + dy * dy
            cx[r] = mx
            cy[r] = my
            s2[r] = acc / (2.0 * n)
    return cx_arr, cy_arr, s2_arr


def batch_radial_count(xy, double radius):
    """Samples per repeat within ``radius`` of the origin; see the fallback."""
    arr = np.ascontiguousarray(xy, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValueError("xy must have shape (repeats, n, 2)")
    if radius < 0.0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    cdef double[:, :, ::1] v = arr
    cdef Py_ssize_t reps = v.shape[0], n = v.shape[1]
    out_arr = np.zeros(reps, dtype=np.longlong)
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t r, j
    cdef double r2 = radius * radius, x, y
    with nogil:
        for r in range(reps):
            for j in range(n):
                x = v[r, j, 0]
                y = v[r, j, 1]
                if x * x + y * y <= r2:
                    out[r] += 1
    return out_arr
