"""Exceptions raised by the exact series layer."""


class SeriesError(ValueError):
    """Base class for invalid series operations."""


class VariableMismatch(SeriesError):
    """Two operands carry different variable tags."""


class InexactDivision(SeriesError):
    """The divisor vanishes to a higher order than the dividend."""


class TruncationError(SeriesError):
    """A coefficient beyond the valid order was requested."""


class BranchError(SeriesError):
    """Square root requested for a series whose constant term is not 1."""


class IdentityViolation(AssertionError):
    """An identity that holds by construction failed.

    Raised only when an internal self-check trips, which means a defect in
    the implementation rather than bad input.
    """
