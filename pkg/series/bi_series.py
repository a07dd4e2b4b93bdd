"""Bivariate series: polynomials in an outer variable with series coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from series.errors import (
    BranchError,
    IdentityViolation,
    InexactDivision,
    SeriesError,
    TruncationError,
    VariableMismatch,
)
from series.power_series import PowerSeries

OUTER_VARIABLES = ("t", "u")


@dataclass(frozen=True)
class BiSeries:
    """``sum_{j<=D} c_j(G) t^j`` with every ``c_j`` known to a common order.

    The outer degree ``D`` and inner order ``N`` both bound what is known:
    coefficients of ``t^j`` for ``j > D`` are unknown, as are inner
    coefficients past ``N``.
    """

    outer_degree: int
    coefficients: tuple[PowerSeries, ...]
    outer_variable: str = "t"

    def __post_init__(self) -> None:
        if self.outer_variable not in OUTER_VARIABLES:
            raise SeriesError(f"unknown outer variable {self.outer_variable!r}")
        coeffs = tuple(self.coefficients)
        if len(coeffs) != self.outer_degree + 1:
            raise SeriesError(
                f"expected {self.outer_degree + 1} coefficients, got {len(coeffs)}"
            )
        inner = coeffs[0].variable
        for c in coeffs:
            if c.variable != inner:
                raise VariableMismatch("mixed inner variables in a BiSeries")
        order = min(c.order for c in coeffs)
        coeffs = tuple(c if c.order == order else c.truncate(order) for c in coeffs)
        object.__setattr__(self, "coefficients", coeffs)

    # ------------------------------------------------------------------
    @property
    def inner_variable(self) -> str:
        return self.coefficients[0].variable

    @property
    def order(self) -> int:
        return self.coefficients[0].order

    @classmethod
    def from_inner(cls, series: PowerSeries, degree: int, outer: str = "t") -> "BiSeries":
        """A series constant in the outer variable."""
        zero = PowerSeries.zero(series.variable, series.order)
        return cls(degree, (series,) + (zero,) * degree, outer)

    @classmethod
    def outer_polynomial(
        cls, coefficients: Sequence[PowerSeries], degree: int, outer: str = "t"
    ) -> "BiSeries":
        """An exact polynomial in the outer variable, padded with zeros to ``degree``."""
        coeffs = list(coefficients)[: degree + 1]
        order = min(c.order for c in coeffs)
        zero = PowerSeries.zero(coeffs[0].variable, order)
        coeffs += [zero] * (degree + 1 - len(coeffs))
        return cls(degree, tuple(coeffs), outer)

    @classmethod
    def outer_variable_series(
        cls, inner: str, order: int, degree: int, outer: str = "t"
    ) -> "BiSeries":
        """The bare outer variable ``t``."""
        one = PowerSeries.one(inner, order)
        zero = PowerSeries.zero(inner, order)
        return cls.outer_polynomial([zero, one], degree, outer)

    @classmethod
    def inverse_one_plus(
        cls, inner: str, order: int, degree: int, outer: str = "t"
    ) -> "BiSeries":
        """``1 / (1 + t)`` expanded to ``degree``."""
        coeffs = [PowerSeries.constant((-1) ** j, inner, order) for j in range(degree + 1)]
        return cls(degree, tuple(coeffs), outer)

    def coefficient(self, j: int) -> PowerSeries:
        if j > self.outer_degree:
            raise TruncationError(
                f"[{self.outer_variable}^{j}] requested from outer degree {self.outer_degree}"
            )
        return self.coefficients[j]

    def at_zero(self) -> PowerSeries:
        """The ``t^0`` slice."""
        return self.coefficients[0]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def truncate(self, degree: int | None = None, order: int | None = None) -> "BiSeries":
        degree = self.outer_degree if degree is None else degree
        order = self.order if order is None else order
        if degree > self.outer_degree:
            raise TruncationError(f"cannot raise outer degree {self.outer_degree} to {degree}")
        coeffs = tuple(c.truncate(order) for c in self.coefficients[: degree + 1])
        return BiSeries(degree, coeffs, self.outer_variable)

    def map_inner(self, transform: Callable[[PowerSeries], PowerSeries]) -> "BiSeries":
        """Apply ``transform`` to every coefficient, e.g. a change of inner variable."""
        return BiSeries(
            self.outer_degree,
            tuple(transform(c) for c in self.coefficients),
            self.outer_variable,
        )

    # ------------------------------------------------------------------
    def _check(self, other: "BiSeries") -> None:
        if other.outer_variable != self.outer_variable:
            raise VariableMismatch(
                f"outer variables {self.outer_variable!r} and {other.outer_variable!r} differ"
            )
        if other.inner_variable != self.inner_variable:
            raise VariableMismatch(
                f"inner variables {self.inner_variable!r} and {other.inner_variable!r} differ"
            )

    def _lift(self, other) -> "BiSeries":
        if isinstance(other, BiSeries):
            self._check(other)
            return other
        if isinstance(other, PowerSeries):
            return BiSeries.from_inner(other, self.outer_degree, self.outer_variable)
        return BiSeries.from_inner(
            PowerSeries.constant(other, self.inner_variable, self.order),
            self.outer_degree,
            self.outer_variable,
        )

    def __add__(self, other) -> "BiSeries":
        other = self._lift(other)
        degree = min(self.outer_degree, other.outer_degree)
        return BiSeries(
            degree,
            tuple(self.coefficients[j] + other.coefficients[j] for j in range(degree + 1)),
            self.outer_variable,
        )

    __radd__ = __add__

    def __neg__(self) -> "BiSeries":
        return BiSeries(self.outer_degree, tuple(-c for c in self.coefficients), self.outer_variable)

    def __sub__(self, other) -> "BiSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "BiSeries":
        return self._lift(other) - self

    def __mul__(self, other) -> "BiSeries":
        if isinstance(other, PowerSeries) or not isinstance(other, BiSeries):
            if isinstance(other, PowerSeries) and other.variable != self.inner_variable:
                raise VariableMismatch("inner variable mismatch in scalar product")
            return self.map_inner(lambda c: c * other)
        self._check(other)
        degree = min(self.outer_degree, other.outer_degree)
        a, b = self.coefficients, other.coefficients
        out = []
        for j in range(degree + 1):
            acc = None
            for i in range(j + 1):
                if a[i].is_zero() or b[j - i].is_zero():
                    continue
                term = a[i] * b[j - i]
                acc = term if acc is None else acc + term
            if acc is None:
                acc = PowerSeries.zero(self.inner_variable, min(self.order, other.order))
            out.append(acc)
        return BiSeries(degree, tuple(out), self.outer_variable)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "BiSeries":
        if exponent < 0:
            raise SeriesError("negative powers: divide explicitly")
        result = self._lift(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __truediv__(self, other) -> "BiSeries":
        """Exact division, allowing a common power of the inner variable.

        With ``v`` the inner valuation of the divisor's ``t^0`` slice, every
        coefficient of both operands must be divisible by ``G^v``; the result
        then loses ``v`` orders.
        """
        if not isinstance(other, (BiSeries, PowerSeries)):
            return self.map_inner(lambda c: c / other)
        other = self._lift(other)
        shift = other.coefficients[0].valuation()
        if shift is None:
            raise InexactDivision("divisor vanishes at t^0 to its whole order")
        try:
            num = [c.shift(-shift) for c in self.coefficients] if shift else list(self.coefficients)
            den = [c.shift(-shift) for c in other.coefficients] if shift else list(other.coefficients)
        except InexactDivision as exc:
            raise InexactDivision(
                f"operands not divisible by {self.inner_variable}^{shift}: {exc}"
            ) from exc
        degree = min(self.outer_degree, other.outer_degree)
        inv = 1 / den[0]
        quotient: list[PowerSeries] = []
        for j in range(degree + 1):
            acc = num[j]
            for i in range(j):
                if not quotient[i].is_zero() and not den[j - i].is_zero():
                    acc = acc - quotient[i] * den[j - i]
            quotient.append(acc * inv)
        return BiSeries(degree, tuple(quotient), self.outer_variable)

    def __rtruediv__(self, other) -> "BiSeries":
        return self._lift(other) / self

    # ------------------------------------------------------------------
    def div_by_t(self) -> "BiSeries":
        """Exact division by the outer variable.

        A nonzero ``t^0`` slice means an identity that should make the
        quotient exact has failed upstream.
        """
        if not self.coefficients[0].is_zero():
            raise IdentityViolation(
                f"t^0 slice does not vanish: {self.coefficients[0]}"
            )
        if self.outer_degree == 0:
            raise TruncationError("div_by_t of an outer-degree-0 series")
        return BiSeries(self.outer_degree - 1, self.coefficients[1:], self.outer_variable)

    def eval_t(self, value: PowerSeries) -> PowerSeries:
        """Substitute ``t -> value`` (a series in the inner variable, zero at 0).

        Terms past the outer degree contribute from order
        ``(D + 1) * valuation(value)`` on, which caps the result's order.
        """
        if value.variable != self.inner_variable:
            raise VariableMismatch(
                f"cannot substitute a series in {value.variable!r} into coefficients in "
                f"{self.inner_variable!r}"
            )
        if value.coefficients[0]:
            raise SeriesError("substituted value must have zero constant term")
        val = value.valuation()
        order = min(self.order, value.order)
        if val is not None:
            order = min(order, (self.outer_degree + 1) * val - 1)
        if order < 0:
            raise TruncationError("outer degree too small for the substituted value")
        value = value.truncate(order)
        result = self.coefficients[self.outer_degree].truncate(order)
        for j in range(self.outer_degree - 1, -1, -1):
            result = result * value + self.coefficients[j].truncate(order)
        return result

    def sqrt_one(self) -> "BiSeries":
        """Square root with constant term ``+1`` at ``t^0 G^0``."""
        s = self.coefficients
        if s[0].coefficients[0] != 1:
            raise BranchError("sqrt_one needs the (t^0, G^0) coefficient to equal 1")
        r0 = s[0].sqrt_one()
        inv = 1 / (r0 * 2)
        roots = [r0]
        for j in range(1, self.outer_degree + 1):
            acc = s[j]
            for i in range(1, j):
                acc = acc - roots[i] * roots[j - i]
            roots.append(acc * inv)
        return BiSeries(self.outer_degree, tuple(roots), self.outer_variable)

    def __str__(self) -> str:
        parts = [f"({c}) {self.outer_variable}^{j}" for j, c in enumerate(self.coefficients)]
        return " + ".join(parts)
