"""Elementary flows: monotone paths of index sets and their measure clock.

A flow interpolates through an inclusion-increasing list of knot sets.
Its clock theta(t) = m[f(t)] is continuous and non-decreasing, so it has
a pseudo-inverse (inf convention), and composing the flow with that
pseudo-inverse yields the standard projection whose Gram matrix is the
one of a one-dimensional fractional Brownian motion.
"""

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

from .covariance import gram
from .errors import (
    KindMismatch,
    NotIncreasing,
    OutOfDomain,
    OutOfRange,
    UnsupportedCollection,
)
from .indexing import (
    EMPTY,
    ChainPoint,
    Empty,
    IndexingCollection,
    OrientedArc,
    Rectangle,
)

__all__ = [
    "ElementaryFlow",
    "flow_through",
    "theta",
    "theta_inverse",
    "project_points",
    "projected_gram",
]

_TAU = 2.0 * math.pi

_INTERPOLATION_TAG = {
    "rect": "corner-linear",
    "oriented": "angle-linear",
    "chain": "parameter-linear",
}


@dataclass(frozen=True)
class ElementaryFlow:
    """Piecewise-linear monotone path through knot sets.

    Knot times are strictly increasing and knot sets weakly increasing
    under inclusion; between knots the collection's linear interpolation
    rule applies (corner, angle, or parameter).  An Empty knot is
    interpolated as the collection's zero set, which anchors the clock
    at 0.
    """

    coll: IndexingCollection
    knots: tuple
    interpolation: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.coll.supports_flows:
            raise UnsupportedCollection(
                "shortest arcs admit no inclusion-monotone interpolation")
        knots = tuple((float(t), u) for t, u in self.knots)
        object.__setattr__(self, "knots", knots)
        if not knots:
            raise NotIncreasing("a flow needs at least one knot")
        for t, _ in knots:
            if not math.isfinite(t):
                raise OutOfDomain(f"knot time must be finite, got {t!r}")
        for (t0, _), (t1, _) in zip(knots, knots[1:]):
            if not t0 < t1:
                raise NotIncreasing("knot times must be strictly increasing")
        for _, u in knots:
            self.coll.check_member(u)
        for (_, u0), (_, u1) in zip(knots, knots[1:]):
            if not self.coll.contains(u0, u1):
                raise NotIncreasing("knot sets must be increasing under inclusion")
        object.__setattr__(
            self, "interpolation", _INTERPOLATION_TAG[self.coll.kind])

    @property
    def domain(self):
        return (self.knots[0][0], self.knots[-1][0])

    def at(self, t):
        """The index set f(t); t must lie in the flow domain."""
        t = float(t)
        times = [k for k, _ in self.knots]
        sets = [u for _, u in self.knots]
        if not times[0] <= t <= times[-1]:
            raise OutOfDomain(
                f"t={t!r} outside flow domain [{times[0]}, {times[-1]}]")
        i = bisect_left(times, t)
        if i < len(times) and times[i] == t:
            return sets[i]
        k = bisect_right(times, t) - 1
        lam = (t - times[k]) / (times[k + 1] - times[k])
        return _interpolate(self.coll, sets[k], sets[k + 1], lam)


def _interpolate(coll, u0, u1, lam):
    if isinstance(u1, Empty):
        # weak inclusion forces u0 to be Empty as well
        return EMPTY
    if isinstance(u0, Empty):
        u0 = coll.zero_set()
    if coll.kind == "rect":
        corner = tuple((1.0 - lam) * a + lam * b
                       for a, b in zip(u0.corner, u1.corner))
        return Rectangle(corner)
    if coll.kind == "oriented":
        angle = (1.0 - lam) * u0.angle + lam * u1.angle
        return OrientedArc(min(angle, _TAU))
    return ChainPoint((1.0 - lam) * u0.t + lam * u1.t)


def flow_through(coll, chain):
    """Elementary flow with knots at times 0..n-1 through a strict chain.

    The chain must be strictly increasing under inclusion; equal
    consecutive sets are rejected (load a knot list directly to build a
    flow with flat clock segments).
    """
    sets = list(chain)
    if not sets:
        raise NotIncreasing("flow_through needs a non-empty chain")
    for u, v in zip(sets, sets[1:]):
        if not coll.contains(u, v) or u == v:
            raise NotIncreasing(
                "chain must be strictly increasing under inclusion")
    return ElementaryFlow(coll, tuple((float(k), u) for k, u in enumerate(sets)))


def theta(flow, t):
    """The measure clock m[f(t)]."""
    return flow.coll.measure(flow.at(t))


def theta_inverse(flow, s):
    """inf{t : theta(t) >= s}, the pseudo-inverse of the clock.

    Flat clock segments resolve to their left edge.  s must lie between
    the clock values of the first and last knots (up to a 1e-12 relative
    slack, within which it is clamped).
    """
    s = float(s)
    clocks = [flow.coll.measure(u) for _, u in flow.knots]
    times = [t for t, _ in flow.knots]
    slack = 1e-12 * max(1.0, abs(s))
    if s < clocks[0] - slack or s > clocks[-1] + slack:
        raise OutOfRange(
            f"s={s!r} outside clock range [{clocks[0]}, {clocks[-1]}]")
    s = min(max(s, clocks[0]), clocks[-1])
    if s <= clocks[0]:
        return times[0]
    # first knot whose clock reaches s; the crossing sits in the segment
    # just before it (clocks are non-decreasing and theta is continuous)
    idx = bisect_left(clocks, s)
    lo = times[idx - 1]
    hi = times[idx]
    # bisection on the predicate theta(t) >= s keeps the invariant
    # theta(lo) < s <= theta(hi); at one-ulp width, hi is the inf
    while True:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            return hi
        if theta(flow, mid) >= s:
            hi = mid
        else:
            lo = mid


def project_points(flow, grid):
    """The standard projection f(theta^{-1}(s)) at each grid value.

    The grid must be strictly increasing and lie within the clock range;
    the returned sets are increasing under inclusion.
    """
    values = [float(s) for s in grid]
    if not values:
        raise OutOfRange("projection grid must be non-empty")
    for a, b in zip(values, values[1:]):
        if not a < b:
            raise OutOfRange("projection grid must be strictly increasing")
    return [flow.at(theta_inverse(flow, s)) for s in values]


def projected_gram(coll, h, flow, grid):
    """Gram matrix of the projected sets.

    Equals the one-dimensional fBm Gram matrix at the grid clock values
    whenever the kernel is a covariance on the collection.
    """
    if flow.coll != coll:
        raise KindMismatch(
            f"flow over {flow.coll.spec_string()} used with "
            f"{coll.spec_string()}")
    return gram(coll, h, project_points(flow, grid))
