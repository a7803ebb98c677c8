"""Exception types raised across the package."""


class PosetError(Exception):
    """Base class for all errors raised by :mod:`firstfit`."""


class CycleError(PosetError, ValueError):
    """The supplied relation pairs contain a directed cycle."""


class SizeError(PosetError, ValueError):
    """The input is larger than an exhaustive routine can handle."""


class GiveUpError(PosetError, RuntimeError):
    """A sampler exhausted its retry budget."""


class BoundViolation(PosetError, AssertionError):
    """First-Fit used more chains than the linear bound allows."""


class EmptyIntervalError(PosetError, ValueError):
    """An element was assigned an empty interval."""


class NonFFPartitionError(PosetError, ValueError):
    """An ordered chain partition is not a First-Fit chain partition."""


class PreconditionError(PosetError, ValueError):
    """Arguments violate the documented precondition of a checker."""


class FormatError(PosetError, ValueError):
    """A text dump could not be parsed."""
