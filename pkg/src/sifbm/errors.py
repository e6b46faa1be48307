"""Exception types shared across the package."""


class SifbmError(Exception):
    """Base class for all errors raised by this library."""


class KindMismatch(SifbmError):
    """An index set (or flow) was used with a collection of another kind."""


class InvalidSet(SifbmError):
    """An index set payload violates the invariants of its kind."""


class InvalidH(SifbmError):
    """Hurst parameter outside the open interval (0, 1)."""


class UnsupportedAction(SifbmError):
    """The collection does not support the requested operation."""


class UnsupportedCollection(SifbmError):
    """The operation is defined, but not on this collection."""


class OutOfRange(SifbmError):
    """A scalar argument lies outside its admissible range."""


class OutOfDomain(SifbmError):
    """A time parameter lies outside the domain of a flow."""


class NotIncreasing(SifbmError):
    """A sequence of sets fails to be increasing under inclusion."""


class NotDecreasing(SifbmError):
    """A sequence of sets fails to be decreasing under inclusion."""


class TooManySubtracted(SifbmError):
    """Increment expansion requested over too many subtracted sets."""


class NotPsd(SifbmError):
    """A matrix that must be positive semidefinite is not."""


class NoConvergence(SifbmError):
    """An iterative routine exhausted its iteration budget."""


class MissingPoint(SifbmError):
    """A referenced index set is not present in the evaluated point list."""


class PreconditionViolated(SifbmError):
    """Structured inputs to a check do not satisfy its hypotheses."""
