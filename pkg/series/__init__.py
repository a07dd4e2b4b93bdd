"""Exact truncated power series in one and two variables."""

from series.bi_series import BiSeries
from series.errors import (
    BranchError,
    IdentityViolation,
    InexactDivision,
    SeriesError,
    TruncationError,
    VariableMismatch,
)
from series.family import SeriesFamily
from series.power_series import PowerSeries, polynomial
from series.rational import QuadSurd

__all__ = [
    "BiSeries",
    "BranchError",
    "IdentityViolation",
    "InexactDivision",
    "PowerSeries",
    "QuadSurd",
    "SeriesError",
    "SeriesFamily",
    "TruncationError",
    "VariableMismatch",
    "polynomial",
]
