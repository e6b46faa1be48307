"""Pure-Python numerical kernels.

Fallback twin of the compiled extension ``sifbm._kernels``.  Three hot
routines live here: a cyclic Jacobi eigenvalue solver for symmetric
matrices, a Cholesky factorization that tolerates semidefinite pivots,
and counter-based Gaussian path sampling (SplitMix64 mixing plus the
AS241 inverse normal CDF).

Both backends perform the same floating-point operations in the same
order, so their outputs agree bit for bit.  Keep any edit here in lock
step with ``_kernels.pyx``.
"""

from math import log, sqrt

import numpy as np

NAME = "python"

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_TWO_NEG53 = 2.0 ** -53


def jacobi_eigenvalues(matrix, max_sweeps, rel_tol):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps rotate the (p, q) planes in row-major order until the
    off-diagonal Frobenius norm drops to ``rel_tol`` times the Frobenius
    norm of the input, or ``max_sweeps`` sweeps have run.  Returns
    ``(eigenvalues_ascending, converged)``.
    """
    src = np.asarray(matrix, dtype=float)
    n = src.shape[0]
    a = [[float(src[i, j]) for j in range(n)] for i in range(n)]

    total = 0.0
    for i in range(n):
        for j in range(n):
            total += a[i][j] * a[i][j]
    threshold = rel_tol * sqrt(total)

    def off_norm():
        s = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                s += a[i][j] * a[i][j]
        return sqrt(2.0 * s)

    converged = off_norm() <= threshold
    sweeps = 0
    while not converged and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                app = a[p][p]
                aqq = a[q][q]
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
                    akp = a[k][p]
                    akq = a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[p][k] = a[k][p]
                    a[k][q] = s * akp + c * akq
                    a[q][k] = a[k][q]
                a[p][p] = app - t * apq
                a[q][q] = aqq + t * apq
                a[p][q] = 0.0
                a[q][p] = 0.0
        sweeps += 1
        converged = off_norm() <= threshold

    eig = sorted(a[i][i] for i in range(n))
    return np.array(eig, dtype=float), converged


def cholesky_semidefinite(matrix, pivot_tol):
    """Lower-triangular L with L L^T ~= matrix, allowing zero pivots.

    A pivot whose residual falls in ``[-pivot_tol, pivot_tol]`` is treated
    as exactly zero and its column is skipped; a residual below
    ``-pivot_tol`` means the matrix is not positive semidefinite.  Returns
    ``(L, ok)`` where ``ok`` is False on a negative pivot.
    """
    src = np.asarray(matrix, dtype=float)
    n = src.shape[0]
    a = [[float(src[i, j]) for j in range(n)] for i in range(n)]
    low = [[0.0] * n for _ in range(n)]

    for j in range(n):
        s = a[j][j]
        for k in range(j):
            s -= low[j][k] * low[j][k]
        if s <= pivot_tol:
            if s < -pivot_tol:
                return np.array(low, dtype=float), False
            continue
        d = sqrt(s)
        low[j][j] = d
        for i in range(j + 1, n):
            t = a[i][j]
            for k in range(j):
                t -= low[i][k] * low[j][k]
            low[i][j] = t / d

    return np.array(low, dtype=float), True


def _mix64(x):
    x &= _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def uniform01(seed, path, index):
    """Counter-based uniform in (0, 1): value (seed, path, index) of the stream.

    Each path gets its own SplitMix64-mixed key, and each index is mixed
    independently under that key, so any (path, index) cell can be
    generated without sequencing.
    """
    key = _mix64((seed + _GOLDEN * (path + 1)) & _MASK)
    x = _mix64((key + _GOLDEN * (index + 1)) & _MASK)
    return ((x >> 11) + 0.5) * _TWO_NEG53


def inverse_normal_cdf(p):
    """Quantile of the standard normal law, for p in (0, 1).

    Wichura's AS241 (PPND16) rational approximation, accurate to about
    1e-15 in absolute terms across the whole domain.
    """
    q = p - 0.5
    if abs(q) <= 0.425:
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
    r = p if q < 0.0 else 1.0 - p
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
    return -val if q < 0.0 else val


def standard_normal(seed, path, index):
    """Counter-based standard normal draw at (seed, path, index)."""
    return inverse_normal_cdf(uniform01(seed, path, index))


def sample_paths(lower, seed, n_paths):
    """Draw ``n_paths`` correlated Gaussian vectors L z with iid normal z.

    ``lower`` is the (n, n) Cholesky factor.  Path p uses the normal
    draws standard_normal(seed, p, 0..n-1).  Returns an (n_paths, n)
    array; rerunning with the same arguments reproduces it exactly.
    """
    lsrc = np.asarray(lower, dtype=float)
    n = lsrc.shape[0]
    low = [[float(lsrc[i, j]) for j in range(n)] for i in range(n)]
    out = np.empty((n_paths, n), dtype=float)
    z = [0.0] * n
    for p in range(n_paths):
        for i in range(n):
            z[i] = inverse_normal_cdf(uniform01(seed, p, i))
        for k in range(n):
            acc = 0.0
            for j in range(k + 1):
                acc += low[k][j] * z[j]
            out[p, k] = acc
    return out
