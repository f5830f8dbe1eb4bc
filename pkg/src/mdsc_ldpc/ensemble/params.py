"""Ensemble parameters and section geometry."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Optional

from ..exceptions import DegenerateCoupling, ParameterError


def as_fraction(value: Any) -> Fraction:
    """Coerce a density value to an exact rational.

    Floats go through their shortest decimal repr so ``0.05`` becomes ``1/20``.
    """

    if isinstance(value, bool):
        raise ParameterError(f"T must be a number, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"T must be a rational or decimal literal, got {value!r}") from exc
    raise ParameterError(f"T must be a number, got {value!r}")


def _density_json(T: Fraction) -> Any:
    if T.denominator == 1:
        return int(T)
    if Fraction(repr(float(T))) == T:
        return float(T)
    return str(T)


@dataclass(frozen=True, order=True)
class SectionIndex:
    """Position ``i`` (never wrapped) and segment ``j`` (always reduced mod L2)."""

    i: int
    j: int

    @classmethod
    def of(cls, i: int, j: int, L2: int) -> "SectionIndex":
        return cls(int(i), int(j) % L2)

    def shifted(self, di: int, dj: int, L2: int) -> "SectionIndex":
        return SectionIndex(self.i + di, (self.j + dj) % L2)

    def as_tuple(self) -> tuple[int, int]:
        return (self.i, self.j)


@dataclass(frozen=True)
class EnsembleParams:
    """The seven parameters of C(d_l, d_r, L1, gamma1, L2, gamma2, T) plus an optional M."""

    dl: int
    dr: int
    L1: int
    gamma1: int
    L2: int = 1
    gamma2: int = 1
    T: Fraction = Fraction(0)
    M: Optional[int] = None

    def __post_init__(self) -> None:
        for name in ("dl", "dr", "L1", "gamma1", "L2", "gamma2"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ParameterError(f"{name} must be a positive integer, got {value!r}", field=name)
        object.__setattr__(self, "T", as_fraction(self.T))
        if not self.gamma1 <= self.L1:
            raise ParameterError(f"gamma1={self.gamma1} must not exceed L1={self.L1}", field="gamma1")
        if not self.gamma2 <= self.L2:
            raise ParameterError(f"gamma2={self.gamma2} must not exceed L2={self.L2}", field="gamma2")
        if not 0 <= self.T <= 1:
            raise ParameterError(f"T={self.T} must lie in [0, 1]", field="T")
        if self.gamma2 == 1 and self.T != 0:
            raise DegenerateCoupling("T must be 0 when gamma2 = 1: there are no off-segment sections", field="T")
        if self.M is not None:
            self.cns_per_section(self.M)

    # geometry -------------------------------------------------------------

    def cns_per_section(self, M: Optional[int] = None) -> int:
        """Number of CNs in a section, M * d_l / d_r, which must be integral."""

        size = self.M if M is None else M
        if size is None:
            raise ParameterError("section size M is required for this operation", field="M")
        if isinstance(size, bool) or not isinstance(size, int) or size < 1:
            raise ParameterError(f"M must be a positive integer, got {size!r}", field="M")
        if (size * self.dl) % self.dr:
            raise ParameterError(
                f"d_r={self.dr} must divide d_l*M={self.dl * size}", field="M"
            )
        return size * self.dl // self.dr

    @property
    def density(self) -> float:
        return float(self.T)

    @property
    def in_weight(self) -> Fraction:
        """Per-section edge probability inside the segment, (1 - T) / gamma1."""
        return (1 - self.T) / self.gamma1

    @property
    def off_weight(self) -> Fraction:
        """Per-section edge probability across segments, T / (gamma1 (gamma2 - 1))."""
        if self.gamma2 == 1:
            return Fraction(0)
        return self.T / (self.gamma1 * (self.gamma2 - 1))

    @property
    def is_one_dimensional(self) -> bool:
        return self.L2 == 1 or self.T == 0

    def in_range(self, at: SectionIndex) -> bool:
        return 0 <= at.i < self.L1 and 0 <= at.j < self.L2

    def one_d(self) -> "EnsembleParams":
        """The 1D reference ensemble C(d_l, d_r, L1, gamma1)."""
        return EnsembleParams(self.dl, self.dr, self.L1, self.gamma1, 1, 1, Fraction(0), self.M)

    def replace(self, **changes: Any) -> "EnsembleParams":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "dl": self.dl,
            "dr": self.dr,
            "L1": self.L1,
            "gamma1": self.gamma1,
            "L2": self.L2,
            "gamma2": self.gamma2,
            "T": _density_json(self.T),
        }
        if self.M is not None:
            data["M"] = self.M
        return data

    def label(self) -> str:
        return (
            f"C({self.dl},{self.dr},L1={self.L1},g1={self.gamma1},"
            f"L2={self.L2},g2={self.gamma2},T={float(self.T):g})"
        )


__all__ = ["EnsembleParams", "SectionIndex", "as_fraction"]
