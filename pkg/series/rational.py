"""Exact rationals and the quadratic field Q(sqrt 5)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from series.errors import SeriesError


def as_fraction(value: int | Fraction | str) -> Fraction:
    """Coerce ``value`` to a :class:`Fraction` in lowest terms."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_fraction(value: Fraction) -> str:
    """Return ``value`` as a ``"num/den"`` string."""
    value = as_fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Parse ``"num/den"`` or a bare integer string.

    Decimal points are rejected so that no rounded value can slip in.
    """
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise SeriesError(f"not an exact fraction: {text!r}")
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise SeriesError(f"not an exact fraction: {text!r}") from exc


@dataclass(frozen=True)
class QuadSurd:
    """A number ``a + b*sqrt(5)`` with rational ``a`` and ``b``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))

    @classmethod
    def golden(cls) -> "QuadSurd":
        """The golden ratio ``(1 + sqrt 5) / 2``."""
        return cls(Fraction(1, 2), Fraction(1, 2))

    @classmethod
    def sqrt5(cls) -> "QuadSurd":
        return cls(0, 1)

    def _coerce(self, other) -> "QuadSurd":
        if isinstance(other, QuadSurd):
            return other
        return QuadSurd(as_fraction(other), 0)

    def __add__(self, other) -> "QuadSurd":
        other = self._coerce(other)
        return QuadSurd(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "QuadSurd":
        return QuadSurd(-self.a, -self.b)

    def __sub__(self, other) -> "QuadSurd":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QuadSurd":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QuadSurd":
        other = self._coerce(other)
        return QuadSurd(
            self.a * other.a + 5 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 5 b^2``; zero only for the zero element."""
        return self.a * self.a - 5 * self.b * self.b

    def inverse(self) -> "QuadSurd":
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 5)")
        return QuadSurd(self.a / norm, -self.b / norm)

    def __truediv__(self, other) -> "QuadSurd":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "QuadSurd":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "QuadSurd":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuadSurd(1, 0)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        """Return ``a``; only legal when the surd part vanishes."""
        if self.b != 0:
            raise SeriesError(f"surd component {self.b} does not vanish")
        return self.a

    def __str__(self) -> str:
        return f"{format_fraction(self.a)} + {format_fraction(self.b)}*sqrt(5)"
