"""The H-covariance kernel on index sets and Gram matrix assembly.

The kernel of the set-indexed fractional Brownian motion is

    phi(U, V) = (m(U)^{2H} + m(V)^{2H} - m(U delta V)^{2H}) / 2

with m the collection's measure and delta the symmetric difference.  A
Gram matrix tabulates phi over a finite list of index sets.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidH
from .indexing import IndexingCollection

__all__ = [
    "HurstParam",
    "GramMatrix",
    "as_hurst",
    "pow_2h",
    "phi",
    "gram",
    "variance_of_difference",
    "fbm_gram",
]


@dataclass(frozen=True)
class HurstParam:
    """Hurst exponent in (0, 1).

    ``well_posed_general`` records whether the kernel is a covariance on
    every collection (H <= 1/2); larger H is covariance only on totally
    ordered collections.
    """

    h: float

    def __post_init__(self):
        h = float(self.h)
        object.__setattr__(self, "h", h)
        if not math.isfinite(h) or not 0.0 < h < 1.0:
            raise InvalidH(f"Hurst parameter must lie in (0, 1), got {h!r}")

    @property
    def well_posed_general(self):
        return self.h <= 0.5

    @property
    def two_h(self):
        return 2.0 * self.h


def as_hurst(h):
    """Coerce a float or HurstParam to HurstParam."""
    if isinstance(h, HurstParam):
        return h
    return HurstParam(h)


def pow_2h(x, two_h):
    """x^(2H) as exp(2H log x), with 0^(2H) = 0; requires x >= 0."""
    if x == 0.0:
        return 0.0
    return math.exp(two_h * math.log(x))


def phi(coll: IndexingCollection, h, u, v):
    """Covariance kernel value phi^H(u, v).

    Symmetric in (u, v) exactly: both orders perform the same
    floating-point operations.
    """
    hp = as_hurst(h)
    mu = coll.measure(u)
    mv = coll.measure(v)
    sd = coll.measure_symdiff(u, v)
    t = hp.two_h
    return 0.5 * (pow_2h(mu, t) + pow_2h(mv, t) - pow_2h(sd, t))


def variance_of_difference(coll, h, u, v):
    """E[(X_u - X_v)^2] = phi(u,u) + phi(v,v) - 2 phi(u,v).

    Equals m(u delta v)^{2H} identically; computing it through phi keeps
    it an independent consistency probe of the kernel.
    """
    return phi(coll, h, u, u) + phi(coll, h, v, v) - 2.0 * phi(coll, h, u, v)


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Symmetric matrix of kernel values over a finite list of index sets.

    ``entries`` is a read-only (n, n) float array with
    entries[i][j] = phi(labels[i], labels[j]) and an exactly symmetric
    layout (upper triangle computed once and mirrored).
    """

    entries: np.ndarray
    h: HurstParam
    labels: tuple

    @property
    def n(self):
        return len(self.labels)


def _freeze(arr):
    arr.setflags(write=False)
    return arr


def gram(coll, h, points):
    """Gram matrix of the kernel over ``points`` (non-empty list)."""
    hp = as_hurst(h)
    pts = tuple(points)
    if not pts:
        raise ValueError("gram needs at least one index set")
    n = len(pts)
    t = hp.two_h
    ent = np.empty((n, n), dtype=float)
    for i in range(n):
        ent[i, i] = pow_2h(coll.measure(pts[i]), t)
        for j in range(i + 1, n):
            val = phi(coll, hp, pts[i], pts[j])
            ent[i, j] = val
            ent[j, i] = val
    return GramMatrix(_freeze(ent), hp, pts)


def fbm_gram(h, clock_values):
    """Gram matrix of one-dimensional fractional Brownian motion.

    entries[i][j] = (s_i^{2H} + s_j^{2H} - |s_i - s_j|^{2H}) / 2 over the
    given non-negative clock values.  This is the reference law that
    standard projections of the set-indexed process must reproduce.
    """
    hp = as_hurst(h)
    s = [float(v) for v in clock_values]
    if not s:
        raise ValueError("fbm_gram needs at least one clock value")
    if any(not math.isfinite(v) or v < 0.0 for v in s):
        raise ValueError("clock values must be finite and >= 0")
    t = hp.two_h
    n = len(s)
    ent = np.empty((n, n), dtype=float)
    for i in range(n):
        ent[i, i] = pow_2h(s[i], t)
        for j in range(i + 1, n):
            val = 0.5 * (pow_2h(s[i], t) + pow_2h(s[j], t) - pow_2h(abs(s[i] - s[j]), t))
            ent[i, j] = val
            ent[j, i] = val
    labels = tuple(s)
    return GramMatrix(_freeze(ent), hp, labels)
