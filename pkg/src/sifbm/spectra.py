"""Symmetric-matrix numerics for Gram matrices.

Eigenvalues (cyclic Jacobi), positive-semidefiniteness verdicts with a
norm-scaled tolerance, Cholesky factorization with a small jitter
ladder for semidefinite inputs, and the scan that locates the H where
the kernel stops being a covariance on a given point set.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import backend
from .covariance import GramMatrix, gram
from .errors import NoConvergence, NotPsd, OutOfRange

__all__ = [
    "PsdVerdict",
    "CholeskyFactor",
    "CriticalHReport",
    "eigenvalues_symmetric",
    "is_psd",
    "cholesky_psd",
    "critical_h_scan",
    "frobenius_norm",
]

JACOBI_MAX_SWEEPS = 50
JACOBI_REL_TOL = 1e-13
PSD_TOL_FACTOR = 1e-9
JITTER_LADDER = (0.0, 1e-14, 1e-12, 1e-10)
RECONSTRUCTION_TOL_FACTOR = 1e-10
BRACKET_WIDTH = 1e-4


@dataclass(frozen=True)
class PsdVerdict:
    """Outcome of a positive-semidefiniteness test."""

    min_eigenvalue: float
    tolerance: float
    is_psd: bool

    def __post_init__(self):
        if not self.tolerance > 0.0:
            raise ValueError("verdict tolerance must be positive")
        if self.is_psd != (self.min_eigenvalue >= -self.tolerance):
            raise ValueError("inconsistent verdict")


@dataclass(frozen=True)
class CholeskyFactor:
    """Lower-triangular factor with the jitter that made it succeed.

    lower @ lower.T reconstructs the input plus ``jitter`` times the
    identity.
    """

    lower: np.ndarray
    jitter: float


@dataclass(frozen=True)
class CriticalHReport:
    """Result of a minimum-eigenvalue scan over a Hurst grid.

    ``grid`` pairs each H with the minimum eigenvalue of the Gram matrix;
    ``bracket`` is the first grid-adjacent (psd, not psd) pair, if any,
    and ``refined_critical_h`` the bisection estimate inside it.
    """

    grid: tuple
    bracket: Optional[tuple]
    refined_critical_h: Optional[float]


def _as_matrix(g):
    if isinstance(g, GramMatrix):
        return np.asarray(g.entries, dtype=float)
    arr = np.asarray(g, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def frobenius_norm(g):
    arr = _as_matrix(g)
    return float(np.sqrt(np.sum(arr * arr)))


def eigenvalues_symmetric(g, max_sweeps=JACOBI_MAX_SWEEPS):
    """All eigenvalues of a symmetric matrix, ascending.

    Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls
    below 1e-13 times the Frobenius norm of the input; raises
    NoConvergence after ``max_sweeps`` full sweeps.
    """
    arr = np.ascontiguousarray(_as_matrix(g))
    values, converged = backend.active.jacobi_eigenvalues(
        arr, max_sweeps, JACOBI_REL_TOL)
    if not converged:
        raise NoConvergence(
            f"Jacobi sweeps exhausted ({max_sweeps}) on a {arr.shape[0]}x"
            f"{arr.shape[0]} matrix")
    return values


def _default_tol(arr):
    tol = PSD_TOL_FACTOR * frobenius_norm(arr)
    # a zero matrix has zero norm; keep the verdict tolerance positive
    return tol if tol > 0.0 else 1e-30


def is_psd(g, tol=None):
    """PSD verdict from the minimum eigenvalue against -tol.

    The default tolerance is 1e-9 times the Frobenius norm, so verdicts
    are invariant under rescaling the matrix.
    """
    arr = _as_matrix(g)
    if tol is None:
        tol = _default_tol(arr)
    tol = float(tol)
    if not tol > 0.0:
        raise OutOfRange(f"tolerance must be positive, got {tol!r}")
    values = eigenvalues_symmetric(arr)
    min_eig = float(values[0])
    return PsdVerdict(min_eig, tol, min_eig >= -tol)


def cholesky_psd(g, jitter_ladder=JITTER_LADDER):
    """Lower-triangular L with L L^T = G + eps I, smallest workable eps.

    The ladder is scaled by trace(G)/n.  Each candidate factorization is
    accepted only if multiplying back reproduces G + eps I to within
    1e-10 times the Frobenius norm of G.  Raises NotPsd when G fails the
    eigenvalue verdict or the ladder is exhausted.
    """
    arr = _as_matrix(g)
    verdict = is_psd(arr)
    if not verdict.is_psd:
        raise NotPsd(
            f"minimum eigenvalue {verdict.min_eigenvalue:.6e} is below "
            f"-{verdict.tolerance:.6e}")
    n = arr.shape[0]
    scale = float(np.trace(arr)) / n
    recon_tol = RECONSTRUCTION_TOL_FACTOR * frobenius_norm(arr)
    max_diag = float(np.max(np.diag(arr)))
    pivot_tol = 1e-13 * n * max(max_diag, 1e-300)
    for mult in jitter_ladder:
        eps = mult * scale
        target = arr + eps * np.eye(n)
        lower, ok = backend.active.cholesky_semidefinite(
            np.ascontiguousarray(target), pivot_tol)
        if not ok:
            continue
        err = float(np.max(np.abs(lower @ lower.T - target)))
        if err <= recon_tol:
            return CholeskyFactor(lower, eps)
    raise NotPsd("jitter ladder exhausted without an accurate factorization")


def _scan_one(coll, points, h):
    g = gram(coll, h, points)
    values = eigenvalues_symmetric(g)
    return float(values[0]), frobenius_norm(g)


def critical_h_scan(coll, points, h_grid, tol=None):
    """Minimum eigenvalue of the Gram matrix across a grid of H values.

    Finds the first grid-adjacent pair where the PSD verdict flips from
    true to false and refines the crossing by bisection on the verdict
    sign down to width 1e-4 in H.  Grid evaluations run on up to
    SIFBM_THREADS worker threads; results are ordered by H regardless.
    """
    hs = [float(h) for h in h_grid]
    if len(hs) < 2:
        raise OutOfRange("h_grid needs at least 2 values")
    for a, b in zip(hs, hs[1:]):
        if not a < b:
            raise OutOfRange("h_grid must be strictly increasing")
    if hs[0] <= 0.0 or hs[-1] >= 1.0:
        raise OutOfRange("h_grid must lie inside (0, 1)")

    workers = backend.thread_count()
    if workers > 1 and len(hs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda h: _scan_one(coll, points, h), hs))
    else:
        results = [_scan_one(coll, points, h) for h in hs]

    def accepts(min_eig, fro):
        t = tol if tol is not None else max(PSD_TOL_FACTOR * fro, 1e-30)
        return min_eig >= -t

    flags = [accepts(me, fr) for me, fr in results]
    grid = tuple((h, me) for h, (me, _) in zip(hs, results))

    bracket = None
    for i in range(len(hs) - 1):
        if flags[i] and not flags[i + 1]:
            bracket = (hs[i], hs[i + 1])
            break
    if bracket is None:
        return CriticalHReport(grid, None, None)

    low, high = bracket
    while high - low > BRACKET_WIDTH:
        mid = 0.5 * (low + high)
        me, fro = _scan_one(coll, points, mid)
        if accepts(me, fro):
            low = mid
        else:
            high = mid
    return CriticalHReport(grid, bracket, 0.5 * (low + high))
