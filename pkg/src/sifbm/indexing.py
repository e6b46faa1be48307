"""Indexing collections and their measure geometry.

Four collections are supported: corner rectangles [0, u] in R^N_+ under
Lebesgue measure, oriented arcs and shortest arcs on the unit circle
under arc length, and a totally ordered chain whose measure is a named
monotone function of the parameter.  Index sets are small immutable
values; the collection object knows how to measure them, intersect
them, test inclusion, and apply the scaling action.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Union

from .errors import (
    InvalidSet,
    KindMismatch,
    OutOfRange,
    UnsupportedAction,
)

_TAU = 2.0 * math.pi


@dataclass(frozen=True)
class Empty:
    """The empty set, valid in every collection."""


EMPTY = Empty()


@dataclass(frozen=True)
class Rectangle:
    """Corner set [0, corner] in R^N_+; components may be zero."""

    corner: tuple

    def __post_init__(self):
        try:
            corner = tuple(float(c) for c in self.corner)
        except (TypeError, ValueError) as exc:
            raise InvalidSet(f"rectangle corner must be a sequence of reals: {exc}")
        object.__setattr__(self, "corner", corner)
        if not corner:
            raise InvalidSet("rectangle needs at least one coordinate")
        for c in corner:
            if not math.isfinite(c) or c < 0.0:
                raise InvalidSet(f"rectangle corner components must be finite and >= 0, got {corner}")


@dataclass(frozen=True)
class OrientedArc:
    """Counterclockwise arc of the given angle from the base point; angle in [0, 2*pi].

    The full angle 2*pi is allowed and stands for the whole circle less a
    point (measure 2*pi).
    """

    angle: float

    def __post_init__(self):
        a = float(self.angle)
        object.__setattr__(self, "angle", a)
        if not math.isfinite(a) or a < 0.0 or a > _TAU:
            raise InvalidSet(f"oriented arc angle must lie in [0, 2*pi], got {a!r}")


@dataclass(frozen=True)
class ShortestArc:
    """Shortest arc between the base point and the point at the given angle.

    Any finite input angle is accepted and stored as the signed
    representative in (-pi, pi]; positive values run counterclockwise.
    Arcs with opposite signs meet only at the base point.
    """

    angle: float

    def __post_init__(self):
        a = float(self.angle)
        if not math.isfinite(a):
            raise InvalidSet(f"shortest arc angle must be finite, got {a!r}")
        a = a % _TAU
        if a > math.pi:
            a -= _TAU
        object.__setattr__(self, "angle", a)


@dataclass(frozen=True)
class ChainPoint:
    """Element of the totally ordered chain, located by parameter t >= 0."""

    t: float

    def __post_init__(self):
        t = float(self.t)
        object.__setattr__(self, "t", t)
        if not math.isfinite(t) or t < 0.0:
            raise InvalidSet(f"chain parameter must be finite and >= 0, got {t!r}")


IndexSet = Union[Empty, Rectangle, OrientedArc, ShortestArc, ChainPoint]


def _plateau(t):
    # flat on [1, 2]: grows with slope 1, pauses for one unit, resumes
    return min(t, 1.0) + max(t - 2.0, 0.0)


def _plateau_inverse(s):
    return s if s <= 1.0 else s + 1.0


@dataclass(frozen=True)
class ChainMap:
    """Named monotone parametrization of the chain: t -> measure, fn(0) = 0.

    ``inverse`` maps a measure back to the smallest parameter attaining
    it (exact inverse for strictly increasing maps).
    """

    name: str
    fn: Callable[[float], float] = field(compare=False)
    inverse: Callable[[float], float] = field(compare=False)


CHAIN_MAPS = {
    "identity": ChainMap("identity", lambda t: t, lambda s: s),
    "sqrt": ChainMap("sqrt", math.sqrt, lambda s: s * s),
    "square": ChainMap("square", lambda t: t * t, math.sqrt),
    "plateau": ChainMap("plateau", _plateau, _plateau_inverse),
}

_KINDS = ("rect", "oriented", "shortest", "chain")
_VARIANT_FOR_KIND = {
    "rect": Rectangle,
    "oriented": OrientedArc,
    "shortest": ShortestArc,
    "chain": ChainPoint,
}


@dataclass(frozen=True)
class IndexingCollection:
    """Ambient space, family of index sets, and measure, as one descriptor."""

    kind: str
    dimension: int = 0
    chain_map: ChainMap = CHAIN_MAPS["identity"]

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidSet(f"unknown collection kind {self.kind!r}")
        if self.kind == "rect" and self.dimension < 1:
            raise InvalidSet("rectangles need dimension >= 1")

    @property
    def is_totally_ordered(self):
        return self.kind in ("oriented", "chain") or (
            self.kind == "rect" and self.dimension == 1)

    @property
    def supports_scaling(self):
        return self.kind != "shortest"

    @property
    def supports_flows(self):
        return self.kind != "shortest"

    def spec_string(self):
        """Inverse of from_spec."""
        if self.kind == "rect":
            return f"rect:{self.dimension}"
        if self.kind == "oriented":
            return "circle:oriented"
        if self.kind == "shortest":
            return "circle:shortest"
        if self.chain_map.name == "identity":
            return "chain"
        return f"chain:{self.chain_map.name}"

    @staticmethod
    def from_spec(text):
        """Parse a collection string: rect:<N>, circle:oriented,
        circle:shortest, chain, or chain:<parametrization>."""
        parts = str(text).strip().split(":")
        if parts[0] == "rect" and len(parts) == 2:
            try:
                n = int(parts[1])
            except ValueError:
                raise ValueError(f"bad rectangle dimension in {text!r}")
            return rectangles(n)
        if parts[0] == "circle" and len(parts) == 2:
            if parts[1] == "oriented":
                return circle_oriented()
            if parts[1] == "shortest":
                return circle_shortest()
        if parts[0] == "chain" and len(parts) == 1:
            return chain()
        if parts[0] == "chain" and len(parts) == 2:
            return chain(parts[1])
        raise ValueError(f"unknown collection spec {text!r}")

    def check_member(self, u):
        """Raise KindMismatch unless u is an index set of this collection."""
        if isinstance(u, Empty):
            return
        variant = _VARIANT_FOR_KIND[self.kind]
        if not isinstance(u, variant):
            raise KindMismatch(
                f"{type(u).__name__} is not a member of {self.spec_string()}")
        if self.kind == "rect" and len(u.corner) != self.dimension:
            raise KindMismatch(
                f"rectangle has {len(u.corner)} coordinates, collection expects {self.dimension}")

    def zero_set(self):
        """The minimal nonempty set: zero corner, zero arc, or chain start."""
        if self.kind == "rect":
            return Rectangle((0.0,) * self.dimension)
        if self.kind == "oriented":
            return OrientedArc(0.0)
        if self.kind == "shortest":
            return ShortestArc(0.0)
        return ChainPoint(0.0)

    def measure(self, u):
        """m(u): Lebesgue volume, arc length, or chain measure; Empty -> 0."""
        self.check_member(u)
        if isinstance(u, Empty):
            return 0.0
        if self.kind == "rect":
            return math.prod(u.corner)
        if self.kind == "oriented":
            return u.angle
        if self.kind == "shortest":
            return abs(u.angle)
        return self.chain_map.fn(u.t)

    def intersection(self, u, v):
        """The intersection, which is again an index set of the collection."""
        self.check_member(u)
        self.check_member(v)
        if isinstance(u, Empty) or isinstance(v, Empty):
            return EMPTY
        if self.kind == "rect":
            return Rectangle(tuple(min(a, b) for a, b in zip(u.corner, v.corner)))
        if self.kind == "oriented":
            return OrientedArc(min(u.angle, v.angle))
        if self.kind == "shortest":
            # opposite sides of the base point: only the base point is
            # shared (sign test, not a product, which can underflow)
            if (u.angle >= 0.0) != (v.angle >= 0.0):
                return ShortestArc(0.0)
            if abs(u.angle) <= abs(v.angle):
                return u
            return v
        return ChainPoint(min(u.t, v.t))

    def measure_intersection(self, u, v):
        return self.measure(self.intersection(u, v))

    def measure_symdiff(self, u, v):
        """m(u △ v) = m(u) + m(v) - 2 m(u ∩ v)."""
        return self.measure(u) + self.measure(v) - 2.0 * self.measure_intersection(u, v)

    def contains(self, u, v):
        """True iff u is a subset of v (structural, not measure-based)."""
        self.check_member(u)
        self.check_member(v)
        if isinstance(u, Empty):
            return True
        if isinstance(v, Empty):
            return False
        if self.kind == "rect":
            return all(a <= b for a, b in zip(u.corner, v.corner))
        if self.kind == "oriented":
            return u.angle <= v.angle
        if self.kind == "shortest":
            if u.angle == 0.0:
                return True
            if u.angle > 0.0:
                return 0.0 < u.angle <= v.angle
            return v.angle <= u.angle < 0.0
        return u.t <= v.t

    def scale_factor(self, a):
        """mu(a): the factor multiplying measures under the scaling action."""
        if not self.supports_scaling:
            raise UnsupportedAction("shortest arcs carry no scaling action")
        a = float(a)
        if not math.isfinite(a) or a <= 0.0:
            raise OutOfRange(f"scale factor must be positive, got {a!r}")
        if self.kind == "rect":
            return a ** self.dimension
        return a

    def scale(self, a, u):
        """Apply the scaling action: m(scale(a, u)) = scale_factor(a) * m(u)."""
        self.scale_factor(a)  # validates the collection and the factor
        a = float(a)
        self.check_member(u)
        if isinstance(u, Empty):
            return EMPTY
        if self.kind == "rect":
            return Rectangle(tuple(a * c for c in u.corner))
        if self.kind == "oriented":
            scaled = a * u.angle
            if scaled > _TAU:
                raise OutOfRange(
                    f"scaled arc angle {scaled!r} exceeds the full circle")
            return OrientedArc(scaled)
        return ChainPoint(self.chain_map.inverse(a * self.chain_map.fn(u.t)))


def rectangles(dimension):
    """Collection of corner rectangles [0, u] in R^dimension."""
    return IndexingCollection("rect", dimension=int(dimension))


def circle_oriented():
    """Counterclockwise arcs from a fixed base point on the unit circle."""
    return IndexingCollection("oriented")


def circle_shortest():
    """Shortest arcs between the base point and a moving point."""
    return IndexingCollection("shortest")


def chain(parametrization="identity"):
    """Totally ordered chain with a named monotone measure map."""
    if isinstance(parametrization, ChainMap):
        cm = parametrization
    else:
        try:
            cm = CHAIN_MAPS[parametrization]
        except KeyError:
            raise ValueError(
                f"unknown chain parametrization {parametrization!r}; "
                f"known: {sorted(CHAIN_MAPS)}")
    return IndexingCollection("chain", chain_map=cm)
