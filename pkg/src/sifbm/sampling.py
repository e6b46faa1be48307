"""Seeded Gaussian sampling of the process at finite point sets.

Paths are drawn as L z with L the semidefinite Cholesky factor of the
Gram matrix and z per-path standard normals from a counter-based
generator (SplitMix64 mixing, AS241 inverse-CDF transform).  Each path
owns an independent stream keyed by (seed, path index), so fields are
reproducible bit for bit and independent of any scheduling.
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from .covariance import GramMatrix, as_hurst, gram
from .errors import MissingPoint
from .spectra import cholesky_psd

__all__ = [
    "GENERATOR_NAME",
    "SampleField",
    "sample_field",
    "empirical_gram",
    "sample_increments",
]

GENERATOR_NAME = "splitmix64-as241"

_MASK = (1 << 64) - 1


@dataclass(frozen=True, eq=False)
class SampleField:
    """Realizations of the process over a fixed point list.

    ``values`` is a read-only (n_paths, n_points) array; row p is path
    p.  ``jitter`` is the diagonal shift the Cholesky ladder needed
    (usually 0).
    """

    points: tuple
    h: object
    seed: int
    n_paths: int
    values: np.ndarray
    jitter: float


def sample_field(coll, h, points, seed, n_paths):
    """Draw ``n_paths`` joint samples of the process at ``points``.

    Requires the Gram matrix to be positive semidefinite (NotPsd
    otherwise, mirroring non-existence of the process).  The seed is
    reduced mod 2^64.
    """
    hp = as_hurst(h)
    pts = tuple(points)
    n_paths = int(n_paths)
    if n_paths < 1:
        raise ValueError(f"n_paths must be >= 1, got {n_paths}")
    seed = int(seed) & _MASK
    g = gram(coll, hp, pts)
    factor = cholesky_psd(g)
    values = backend.active.sample_paths(factor.lower, seed, n_paths)
    values.setflags(write=False)
    return SampleField(pts, hp, seed, n_paths, values, factor.jitter)


def empirical_gram(field):
    """Second-moment estimator of the Gram matrix from a sample field.

    No mean subtraction: the law is centered, and E[X_i X_j] is the
    quantity the analytic Gram matrix tabulates.  Needs n_paths >= 2.
    """
    if field.n_paths < 2:
        raise ValueError("empirical_gram needs at least 2 paths")
    v = field.values
    n = v.shape[1]
    ent = np.empty((n, n), dtype=float)
    for i in range(n):
        for j in range(i, n):
            est = float(np.dot(v[:, i], v[:, j])) / field.n_paths
            ent[i, j] = est
            ent[j, i] = est
    ent.setflags(write=False)
    return GramMatrix(ent, field.h, field.points)


def sample_increments(field, increments):
    """Pathwise signed sums realizing each increment expression.

    Every expansion term must be one of the sampled points (structural
    match); returns an (n_paths, k) array, one column per expression.
    """
    index = {point: i for i, point in enumerate(field.points)}
    exprs = list(increments)
    out = np.zeros((field.n_paths, len(exprs)), dtype=float)
    for k, expr in enumerate(exprs):
        for coefficient, term in expr.expansion:
            i = index.get(term)
            if i is None:
                raise MissingPoint(
                    f"expansion term {term!r} is not among the sampled points")
            out[:, k] += coefficient * field.values[:, i]
    return out
