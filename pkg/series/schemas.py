"""JSON payloads for exact series, families and kernel bundles."""
from __future__ import annotations

from typing import TYPE_CHECKING, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from series.bi_series import BiSeries
from series.family import SeriesFamily
from series.power_series import VARIABLES, PowerSeries
from series.rational import format_fraction, parse_fraction

if TYPE_CHECKING:
    from twopoint.kernel import KernelBundle


class SeriesPayload(BaseModel):
    """Exact series on the wire: coefficients are ``"num/den"`` strings."""

    variable: str
    order: int = Field(..., ge=0)
    coefficients: List[str]

    @field_validator("variable")
    @classmethod
    def _known_variable(cls, value: str) -> str:
        if value not in VARIABLES:
            raise ValueError(f"unknown variable tag {value!r}")
        return value

    @field_validator("coefficients")
    @classmethod
    def _exact_fractions(cls, value: List[str]) -> List[str]:
        for text in value:
            parse_fraction(text)
        return value

    @classmethod
    def from_series(cls, series: PowerSeries) -> "SeriesPayload":
        return cls(
            variable=series.variable,
            order=series.order,
            coefficients=[format_fraction(c) for c in series.coefficients],
        )

    def to_series(self) -> PowerSeries:
        return PowerSeries(
            self.variable, self.order, tuple(parse_fraction(c) for c in self.coefficients)
        )


class FamilyPayload(BaseModel):
    """A family ``{S_k}``; the limit is omitted when the family has none."""

    name: str
    entries: List[SeriesPayload]
    limit: Optional[SeriesPayload] = None

    @classmethod
    def from_family(cls, family: SeriesFamily) -> "FamilyPayload":
        return cls(
            name=family.name,
            entries=[SeriesPayload.from_series(s) for s in family.entries],
            limit=SeriesPayload.from_series(family.limit) if family.limit is not None else None,
        )

    def to_family(self) -> SeriesFamily:
        return SeriesFamily(
            self.name,
            tuple(e.to_series() for e in self.entries),
            self.limit.to_series() if self.limit is not None else None,
        )


class BiSeriesPayload(BaseModel):
    outer_variable: str = "t"
    outer_degree: int = Field(..., ge=0)
    coefficients: List[SeriesPayload]

    @classmethod
    def from_bi_series(cls, series: BiSeries) -> "BiSeriesPayload":
        return cls(
            outer_variable=series.outer_variable,
            outer_degree=series.outer_degree,
            coefficients=[SeriesPayload.from_series(c) for c in series.coefficients],
        )

    def to_bi_series(self) -> BiSeries:
        return BiSeries(
            self.outer_degree,
            tuple(c.to_series() for c in self.coefficients),
            self.outer_variable,
        )


class KernelPayload(BaseModel):
    """Everything the kernel construction produces, keyed by symbol."""

    C: SeriesPayload
    aux_g4: SeriesPayload
    h_table: Dict[int, SeriesPayload] = Field(
        default_factory=dict, description="h_{2i} keyed by i"
    )
    phi: BiSeriesPayload
    Y: BiSeriesPayload

    @field_validator("h_table")
    @classmethod
    def _contiguous_from_two(cls, value: Dict[int, SeriesPayload]) -> Dict[int, SeriesPayload]:
        if sorted(value) != list(range(2, len(value) + 2)):
            raise ValueError(f"h_table keys must run 2..{len(value) + 1}, got {sorted(value)}")
        return value

    @classmethod
    def from_bundle(cls, bundle: "KernelBundle") -> "KernelPayload":
        return cls(
            C=SeriesPayload.from_series(bundle.C),
            aux_g4=SeriesPayload.from_series(bundle.aux_g4),
            h_table={i: SeriesPayload.from_series(h) for i, h in enumerate(bundle.h_table, start=2)},
            phi=BiSeriesPayload.from_bi_series(bundle.phi),
            Y=BiSeriesPayload.from_bi_series(bundle.Y),
        )

    def h_series(self) -> tuple[PowerSeries, ...]:
        """``h_4, h_6, ...`` in order."""
        return tuple(self.h_table[i].to_series() for i in sorted(self.h_table))
