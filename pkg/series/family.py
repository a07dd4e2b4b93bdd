"""Indexed families ``{S_k}`` of power series sharing a variable and order."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from series.errors import IdentityViolation, SeriesError, VariableMismatch
from series.power_series import PowerSeries


@dataclass(frozen=True)
class SeriesFamily:
    """Entries ``S_0..S_K`` plus an optional ``k -> infinity`` limit.

    Families indexed from 1 (``R_k``, ``T_k``, ``G_k``) keep a zero
    placeholder at index 0.
    """

    name: str
    entries: tuple[PowerSeries, ...]
    limit: Optional[PowerSeries] = None

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        if not entries:
            raise SeriesError(f"family {self.name!r} has no entries")
        variable = entries[0].variable
        for k, s in enumerate(entries):
            if s.variable != variable:
                raise VariableMismatch(f"{self.name}_{k} is in {s.variable!r}, not {variable!r}")
        if self.limit is not None and self.limit.variable != variable:
            raise VariableMismatch(f"limit of {self.name!r} is in another variable")
        object.__setattr__(self, "entries", entries)

    @property
    def K(self) -> int:
        return len(self.entries) - 1

    @property
    def N(self) -> int:
        return min(s.order for s in self.entries)

    @property
    def variable(self) -> str:
        return self.entries[0].variable

    def __getitem__(self, k: int) -> PowerSeries:
        return self.entries[k]

    def __iter__(self) -> Iterator[PowerSeries]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def map(self, name: str, transform: Callable[[PowerSeries], PowerSeries]) -> "SeriesFamily":
        limit = transform(self.limit) if self.limit is not None else None
        return SeriesFamily(name, tuple(transform(s) for s in self.entries), limit)

    def truncate(self, K: int | None = None, N: int | None = None) -> "SeriesFamily":
        K = self.K if K is None else K
        N = self.N if N is None else N
        limit = self.limit.truncate(min(N, self.limit.order)) if self.limit is not None else None
        return SeriesFamily(self.name, tuple(s.truncate(N) for s in self.entries[: K + 1]), limit)

    def agrees_with(self, other: "SeriesFamily", kmin: int = 1, kmax: int | None = None,
                    upto: int | None = None) -> bool:
        kmax = min(self.K, other.K) if kmax is None else kmax
        return all(
            self.entries[k].agrees_with(other.entries[k], upto) for k in range(kmin, kmax + 1)
        )

    def first_disagreement(self, other: "SeriesFamily", kmin: int = 1,
                           kmax: int | None = None) -> tuple[int, int] | None:
        """``(k, n)`` of the first differing coefficient, or ``None``."""
        kmax = min(self.K, other.K) if kmax is None else kmax
        for k in range(kmin, kmax + 1):
            a, b = self.entries[k], other.entries[k]
            for n in range(min(a.order, b.order) + 1):
                if a.coefficients[n] != b.coefficients[n]:
                    return k, n
        return None

    def check_counting(self, kmin: int = 1) -> None:
        """Assert integrality, monotonicity in ``k`` and stabilization to the limit."""
        for k in range(kmin, self.K + 1):
            self.entries[k].assert_integral(f"{self.name}_{k}")
        for k in range(kmin + 1, self.K + 1):
            prev, cur = self.entries[k - 1], self.entries[k]
            for n in range(min(prev.order, cur.order) + 1):
                if cur.coefficients[n] < prev.coefficients[n]:
                    raise IdentityViolation(
                        f"{self.name}_{k} decreases at order {n}: "
                        f"{cur.coefficients[n]} < {prev.coefficients[n]}"
                    )
        if self.limit is None:
            return
        for k in range(kmin, self.K + 1):
            s = self.entries[k]
            for n in range(min(k, s.order + 1, self.limit.order + 1)):
                if s.coefficients[n] != self.limit.coefficients[n]:
                    raise IdentityViolation(
                        f"{self.name}_{k} has not stabilized at order {n}"
                    )
