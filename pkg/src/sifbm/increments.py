"""Inclusion-exclusion increments over left neighborhoods C = U \\ (U1 u ... u Un).

An increment expression expands the process increment on C into the
signed sum (+1, U) plus ((-1)^{|S|}, U n (n_{i in S} Ui)) over non-empty
subsets S.  Covariances of increments follow by bilinearity against the
kernel; applying a set function to the expansion instead gives the
premeasure built from it.
"""

from dataclasses import dataclass

from .covariance import as_hurst, phi
from .errors import TooManySubtracted

__all__ = [
    "IncrementExpr",
    "MAX_SUBTRACTED",
    "increment_expand",
    "increment_covariance",
    "premeasure_psi",
]

MAX_SUBTRACTED = 20


@dataclass(frozen=True)
class IncrementExpr:
    """Signed inclusion-exclusion expansion of an increment.

    ``expansion`` holds 2^n pairs (coefficient, index set) in subset
    order: the base set first, then subsets of the subtracted list by
    ascending bitmask.
    """

    base: object
    subtracted: tuple
    expansion: tuple


def increment_expand(coll, base, subtracted=()):
    """Expand the increment on base minus the union of ``subtracted``.

    Intersections are computed by the collection; at most 20 subtracted
    sets are accepted (the expansion has 2^n terms).
    """
    subtracted = tuple(subtracted)
    n = len(subtracted)
    if n > MAX_SUBTRACTED:
        raise TooManySubtracted(
            f"{n} subtracted sets would expand to 2^{n} terms "
            f"(cap {MAX_SUBTRACTED})")
    coll.check_member(base)
    for u in subtracted:
        coll.check_member(u)
    terms = [(1, base)]
    for mask in range(1, 1 << n):
        term = base
        for i in range(n):
            if mask & (1 << i):
                term = coll.intersection(term, subtracted[i])
        coefficient = -1 if bin(mask).count("1") % 2 else 1
        terms.append((coefficient, term))
    return IncrementExpr(base, subtracted, tuple(terms))


def increment_covariance(coll, h, c, cprime):
    """E[dX_C dX_C'] by bilinear expansion against the kernel.

    Terms are accumulated in expansion order (both factors), so the
    result is bit-stable across runs.
    """
    hp = as_hurst(h)
    total = 0.0
    for ca, ta in c.expansion:
        for cb, tb in cprime.expansion:
            total += (ca * cb) * phi(coll, hp, ta, tb)
    return total


def premeasure_psi(coll, c, base_fn):
    """Signed sum of ``base_fn`` over the expansion of C.

    With base_fn = the collection measure this is m(C) exactly
    (inclusion-exclusion); with base_fn recovered from a covariance
    diagonal it is the premeasure of the characterization argument.
    Errors raised by base_fn on any term propagate unchanged.
    """
    for _, term in c.expansion:
        coll.check_member(term)
    total = 0.0
    for coefficient, term in c.expansion:
        total += coefficient * base_fn(term)
    return total
