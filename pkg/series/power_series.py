"""Truncated univariate power series with exact rational coefficients."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from series.errors import (
    BranchError,
    InexactDivision,
    SeriesError,
    TruncationError,
    VariableMismatch,
)
from series.rational import as_fraction

logger = logging.getLogger(__name__)

VARIABLES = ("g", "G", "x", "t", "C")

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class PowerSeries:
    """A series ``sum c_i z^i`` known exactly for ``0 <= i <= order``.

    Coefficients past ``order`` are unknown, never assumed to vanish. Every
    operation reports the order up to which its result is exact, so a chain
    of operations can only lose precision, never invent it.
    """

    variable: str
    order: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.variable not in VARIABLES:
            raise SeriesError(f"unknown variable tag {self.variable!r}")
        if self.order < 0:
            raise TruncationError(f"negative order {self.order}")
        coeffs = tuple(as_fraction(c) for c in self.coefficients)
        if len(coeffs) != self.order + 1:
            raise SeriesError(
                f"expected {self.order + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coefficients", coeffs)

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def from_coefficients(
        cls, variable: str, coefficients: Iterable, order: int | None = None
    ) -> "PowerSeries":
        """Build a series from a polynomial prefix.

        When ``order`` exceeds the number of supplied coefficients the
        remaining ones are exact zeros (the input is a polynomial).
        """
        coeffs = [as_fraction(c) for c in coefficients]
        if order is None:
            order = max(len(coeffs) - 1, 0)
        if not coeffs:
            coeffs = [_ZERO]
        coeffs = (coeffs + [_ZERO] * (order + 1))[: order + 1]
        return cls(variable, order, tuple(coeffs))

    @classmethod
    def zero(cls, variable: str, order: int) -> "PowerSeries":
        return cls(variable, order, (_ZERO,) * (order + 1))

    @classmethod
    def constant(cls, value, variable: str, order: int) -> "PowerSeries":
        return cls.from_coefficients(variable, [value], order)

    @classmethod
    def one(cls, variable: str, order: int) -> "PowerSeries":
        return cls.constant(1, variable, order)

    @classmethod
    def monomial(cls, variable: str, power: int, order: int, coefficient=1) -> "PowerSeries":
        """``coefficient * variable**power`` truncated at ``order``."""
        coeffs = [_ZERO] * (order + 1)
        if power <= order:
            coeffs[power] = as_fraction(coefficient)
        return cls(variable, order, tuple(coeffs))

    @classmethod
    def identity(cls, variable: str, order: int) -> "PowerSeries":
        return cls.monomial(variable, 1, order)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------
    def __getitem__(self, index: int) -> Fraction:
        return self.coefficient(index)

    def coefficient(self, index: int) -> Fraction:
        if index < 0:
            return _ZERO
        if index > self.order:
            raise TruncationError(
                f"[{self.variable}^{index}] requested from a series of order {self.order}"
            )
        return self.coefficients[index]

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` if all vanish."""
        for i, c in enumerate(self.coefficients):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def assert_integral(self, what: str = "series", nonnegative: bool = True) -> None:
        """Assert the series counts objects: integer and (optionally) nonnegative."""
        for i, c in enumerate(self.coefficients):
            if c.denominator != 1 or (nonnegative and c < 0):
                raise SeriesError(f"{what}: [{self.variable}^{i}] = {c} is not a count")

    def agrees_with(self, other: "PowerSeries", upto: int | None = None) -> bool:
        """Coefficientwise equality up to ``upto`` (default: common order)."""
        self._check_variable(other)
        limit = min(self.order, other.order) if upto is None else upto
        if limit > min(self.order, other.order):
            raise TruncationError(f"cannot compare beyond order {min(self.order, other.order)}")
        return self.coefficients[: limit + 1] == other.coefficients[: limit + 1]

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            mono = "" if i == 0 else (self.variable if i == 1 else f"{self.variable}^{i}")
            coef = str(c) if (i == 0 or c != 1) else ""
            terms.append(f"{coef}{'*' if coef and mono else ''}{mono}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O({self.variable}^{self.order + 1})"

    # ------------------------------------------------------------------
    # truncation and shifts
    # ------------------------------------------------------------------
    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise TruncationError(f"cannot raise order {self.order} to {order}")
        return PowerSeries(self.variable, order, self.coefficients[: order + 1])

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by ``variable**k``; negative ``k`` divides exactly."""
        if k >= 0:
            return PowerSeries(
                self.variable, self.order + k, (_ZERO,) * k + self.coefficients
            )
        k = -k
        if k > self.order + 1:
            raise TruncationError(f"shift by {k} exhausts order {self.order}")
        if any(self.coefficients[:k]):
            raise InexactDivision(
                f"{self.variable}^{k} does not divide a series of valuation {self.valuation()}"
            )
        if k == self.order + 1:
            raise TruncationError(f"shift by {k} leaves no known coefficient")
        return PowerSeries(self.variable, self.order - k, self.coefficients[k:])

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------
    def _check_variable(self, other: "PowerSeries") -> None:
        if other.variable != self.variable:
            raise VariableMismatch(
                f"cannot combine series in {self.variable!r} and {other.variable!r}"
            )

    def _lift(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            self._check_variable(other)
            return other
        return PowerSeries.constant(as_fraction(other), self.variable, self.order)

    def __add__(self, other) -> "PowerSeries":
        if not isinstance(other, (PowerSeries, Rational)):
            return NotImplemented
        other = self._lift(other)
        order = min(self.order, other.order)
        return PowerSeries(
            self.variable,
            order,
            tuple(self.coefficients[i] + other.coefficients[i] for i in range(order + 1)),
        )

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(self.variable, self.order, tuple(-c for c in self.coefficients))

    def __sub__(self, other) -> "PowerSeries":
        if not isinstance(other, (PowerSeries, Rational)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "PowerSeries":
        return self._lift(other) - self

    def scale(self, factor) -> "PowerSeries":
        factor = as_fraction(factor)
        return PowerSeries(self.variable, self.order, tuple(factor * c for c in self.coefficients))

    def __mul__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            if not isinstance(other, Rational):
                return NotImplemented
            return self.scale(other)
        self._check_variable(other)
        order = min(self.order, other.order)
        a = self.coefficients
        b = other.coefficients
        # skip the zero prefix of either factor
        va = self.valuation()
        vb = other.valuation()
        if va is None or vb is None:
            return PowerSeries.zero(self.variable, order)
        out = [_ZERO] * (order + 1)
        for i in range(va, order + 1 - vb):
            ai = a[i]
            if not ai:
                continue
            for j in range(vb, order + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return PowerSeries(self.variable, order, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "PowerSeries":
        if exponent < 0:
            return (PowerSeries.one(self.variable, self.order) / self) ** (-exponent)
        result = PowerSeries.one(self.variable, self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __truediv__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            if not isinstance(other, Rational):
                return NotImplemented
            factor = as_fraction(other)
            if factor == 0:
                raise ZeroDivisionError("series divided by zero")
            return self.scale(1 / factor)
        self._check_variable(other)
        shift = other.valuation()
        if shift is None:
            raise InexactDivision("divisor vanishes to its whole known order")
        dividend = self.shift(-shift) if shift else self
        divisor = other.shift(-shift) if shift else other
        order = min(dividend.order, divisor.order)
        a = dividend.coefficients
        b = divisor.coefficients
        inv = 1 / b[0]
        q = [_ZERO] * (order + 1)
        for n in range(order + 1):
            acc = a[n]
            for i in range(max(0, n - divisor.order), n):
                if q[i] and b[n - i]:
                    acc -= q[i] * b[n - i]
            q[n] = acc * inv
        return PowerSeries(self.variable, order, tuple(q))

    def __rtruediv__(self, other) -> "PowerSeries":
        return self._lift(other) / self

    # ------------------------------------------------------------------
    # composition, reversion, square root
    # ------------------------------------------------------------------
    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """Return ``self(inner(z))`` in the variable of ``inner``."""
        if inner.coefficients[0]:
            raise SeriesError("inner series of a composition must have zero constant term")
        order = min(self.order, inner.order)
        inner = inner.truncate(order)
        result = PowerSeries.constant(self.coefficients[order], inner.variable, order)
        for j in range(order - 1, -1, -1):
            result = result * inner + self.coefficients[j]
        return result

    __call__ = compose

    def revert(self, variable: str | None = None) -> "PowerSeries":
        """Compositional inverse, by Lagrange inversion.

        ``[z^n] f = (1/n) [w^(n-1)] (w / s(w))^n``; the result is tagged with
        ``variable`` (default: the same tag as ``self``).
        """
        if self.coefficients[0]:
            raise SeriesError("reversion needs a zero constant term")
        if self.order < 1 or not self.coefficients[1]:
            raise SeriesError("reversion needs a nonzero linear coefficient")
        variable = variable or self.variable
        order = self.order
        phi = PowerSeries.one(self.variable, order - 1) / self.shift(-1)
        coeffs = [_ZERO] * (order + 1)
        power = PowerSeries.one(self.variable, order - 1)
        for n in range(1, order + 1):
            power = power * phi
            coeffs[n] = power.coefficients[n - 1] / n
        logger.debug("reverted series in %s to order %d", self.variable, order)
        return PowerSeries(variable, order, tuple(coeffs))

    def sqrt_one(self) -> "PowerSeries":
        """Square root on the branch with constant term ``+1``."""
        if self.coefficients[0] != 1:
            raise BranchError(f"sqrt_one needs constant term 1, got {self.coefficients[0]}")
        s = self.coefficients
        r = [_ZERO] * (self.order + 1)
        r[0] = _ONE
        for n in range(1, self.order + 1):
            acc = s[n]
            for i in range(1, n):
                if r[i] and r[n - i]:
                    acc -= r[i] * r[n - i]
            r[n] = acc / 2
        return PowerSeries(self.variable, self.order, tuple(r))


def polynomial(variable: str, coefficients: Sequence, order: int) -> PowerSeries:
    """Shorthand for an exact polynomial viewed as a series of ``order``."""
    return PowerSeries.from_coefficients(variable, coefficients, order)
