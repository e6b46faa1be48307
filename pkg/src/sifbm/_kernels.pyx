# cython: boundscheck=False, wraparound=False
"""Compiled numerical kernels.

Twin of ``sifbm._kernels_py``: the same three routines (cyclic Jacobi
eigenvalues, semidefinite Cholesky, counter-based Gaussian sampling)
with identical operation order, compiled for speed.  The extension is
built with -ffp-contract=off so results match the pure-Python backend
bit for bit.  Keep any edit here in lock step with that module.
"""

from libc.math cimport fabs, log, sqrt

import numpy as np

NAME = "compiled"

cdef unsigned long long _GOLDEN = 0x9E3779B97F4A7C15ULL
cdef double _TWO_NEG53 = 2.0 ** -53


cdef double _off_norm(double[:, ::1] a, Py_ssize_t n):
    cdef double s = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(i + 1, n):
            s += a[i, j] * a[i, j]
    return sqrt(2.0 * s)


def jacobi_eigenvalues(matrix, max_sweeps, rel_tol):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Same contract as the pure-Python twin: returns
    ``(eigenvalues_ascending, converged)``.
    """
    cdef double[:, ::1] a = np.array(matrix, dtype=float, order="C", copy=True)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, p, q, k
    cdef int sweeps = 0
    cdef int cap = max_sweeps
    cdef double rtol = rel_tol
    cdef double total = 0.0
    cdef double threshold, apq, app, aqq, tau, t, c, s, akp, akq
    cdef bint converged

    for i in range(n):
        for j in range(n):
            total += a[i, j] * a[i, j]
    threshold = rtol * sqrt(total)

    converged = _off_norm(a, n) <= threshold
    while not converged and sweeps < cap:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (sqrt(1.0 + tau * tau) - tau)
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[p, k] = a[k, p]
                    a[k, q] = s * akp + c * akq
                    a[q, k] = a[k, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
        sweeps += 1
        converged = _off_norm(a, n) <= threshold

    eig = sorted(a[i, i] for i in range(n))
    return np.array(eig, dtype=float), bool(converged)


def cholesky_semidefinite(matrix, pivot_tol):
    """Lower-triangular L with L L^T ~= matrix, allowing zero pivots.

    Same contract as the pure-Python twin: returns ``(L, ok)``.
    """
    cdef double[:, ::1] a = np.array(matrix, dtype=float, order="C", copy=True)
    cdef Py_ssize_t n = a.shape[0]
    low_arr = np.zeros((n, n), dtype=float)
    cdef double[:, ::1] low = low_arr
    cdef Py_ssize_t i, j, k
    cdef double ptol = pivot_tol
    cdef double s, d, t

    for j in range(n):
        s = a[j, j]
        for k in range(j):
            s -= low[j, k] * low[j, k]
        if s <= ptol:
            if s < -ptol:
                return low_arr, False
            continue
        d = sqrt(s)
        low[j, j] = d
        for i in range(j + 1, n):
            t = a[i, j]
            for k in range(j):
                t -= low[i, k] * low[j, k]
            low[i, j] = t / d

    return low_arr, True


cdef unsigned long long _mix64(unsigned long long x):
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL
    return x ^ (x >> 31)


cdef double _uniform01(unsigned long long seed,
                       unsigned long long path,
                       unsigned long long index):
    cdef unsigned long long key = _mix64(seed + _GOLDEN * (path + 1))
    cdef unsigned long long x = _mix64(key + _GOLDEN * (index + 1))
    return (<double> (x >> 11) + 0.5) * _TWO_NEG53


cdef double _inverse_normal_cdf(double p):
    cdef double q = p - 0.5
    cdef double r, num, den, val
    if fabs(q) <= 0.425:
        r = 0.180625 - q * q
        num = (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r
                    + 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r
                  + 1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r
                + 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0)
        den = (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r
                    + 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r
                  + 5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r
                + 4.2313330701600911252e+1) * r + 1.0)
        return q * num / den
    if q < 0.0:
        r = p
    else:
        r = 1.0 - p
    r = sqrt(-log(r))
    if r <= 5.0:
        r -= 1.6
        num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r
                    + 2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r
                  + 3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r
                + 4.63033784615654529590e+0) * r + 1.42343711074968357734e+0)
        den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r
                    + 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r
                  + 6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r
                + 2.05319162663775882187e+0) * r + 1.0)
    else:
        r -= 5.0
        num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r
                    + 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r
                  + 2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r
                + 5.46378491116411436990e+0) * r + 6.65790464350110377720e+0)
        den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r
                    + 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r
                  + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r
                + 5.99832206555887937690e-1) * r + 1.0)
    val = num / den
    if q < 0.0:
        return -val
    return val


def uniform01(seed, path, index):
    """Counter-based uniform in (0, 1); see the pure-Python twin."""
    return _uniform01(seed, path, index)


def inverse_normal_cdf(p):
    """AS241 (PPND16) normal quantile for p in (0, 1)."""
    return _inverse_normal_cdf(p)


def standard_normal(seed, path, index):
    """Counter-based standard normal draw at (seed, path, index)."""
    return _inverse_normal_cdf(_uniform01(seed, path, index))


def sample_paths(lower, seed, n_paths):
    """Draw ``n_paths`` correlated Gaussian vectors L z with iid normal z.

    Same contract as the pure-Python twin.
    """
    cdef double[:, ::1] low = np.array(lower, dtype=float, order="C", copy=True)
    cdef Py_ssize_t n = low.shape[0]
    cdef Py_ssize_t m = n_paths
    cdef unsigned long long sd = seed
    out_arr = np.empty((m, n), dtype=float)
    cdef double[:, ::1] out = out_arr
    z_arr = np.empty(n, dtype=float)
    cdef double[::1] z = z_arr
    cdef Py_ssize_t p, i, k, j
    cdef double acc

    for p in range(m):
        for i in range(n):
            z[i] = _inverse_normal_cdf(
                _uniform01(sd, <unsigned long long> p, <unsigned long long> i))
        for k in range(n):
            acc = 0.0
            for j in range(k + 1):
                acc += low[k, j] * z[j]
            out[p, k] = acc
    return out_arr
