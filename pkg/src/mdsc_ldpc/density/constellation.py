"""The grid of per-section erasure probabilities tracked by density evolution."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterator, Optional, Union

import numpy as np

from ..ensemble import EnsembleParams, SectionIndex
from ..exceptions import ParameterError

DEFAULT_DELTA = 1e-12


def _check_probability(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ParameterError(f"{name}={value} must lie in [0, 1]", field=name)
    return value


@dataclass
class Constellation:
    """Erasure probabilities x_(i,j) over rows ``i_min .. i_max`` and all segments.

    Row ``r`` of ``values`` holds position ``i_min + r``. Positions outside the
    grid read as 0 and are never written. ``frozen`` sections keep their value
    through every update.
    """

    values: np.ndarray
    frozen: np.ndarray
    i_min: int = 0
    epsilon: float = 1.0
    delta: float = DEFAULT_DELTA

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2:
            raise ParameterError("constellation values must be a 2D grid (positions x segments)")
        self.frozen = np.asarray(self.frozen, dtype=bool)
        if self.frozen.shape != self.values.shape:
            raise ParameterError("frozen mask must match the value grid")
        self.epsilon = _check_probability("epsilon", self.epsilon)
        self.delta = _check_probability("delta", self.delta)

    @classmethod
    def full_code(cls, p: EnsembleParams, epsilon: float, delta: float = DEFAULT_DELTA) -> "Constellation":
        """Every in-range section starts fully erased; everything else reads 0."""

        shape = (p.L1, p.L2)
        return cls(np.ones(shape), np.zeros(shape, dtype=bool), 0, epsilon, delta)

    @property
    def L2(self) -> int:
        return int(self.values.shape[1])

    @property
    def n_positions(self) -> int:
        return int(self.values.shape[0])

    @property
    def i_max(self) -> int:
        return self.i_min + self.n_positions - 1

    def row(self, i: int) -> Optional[int]:
        r = i - self.i_min
        if 0 <= r < self.n_positions:
            return r
        return None

    def value(self, at: SectionIndex) -> float:
        r = self.row(at.i)
        if r is None:
            return 0.0
        return float(self.values[r, at.j % self.L2])

    def in_range_mask(self, p: EnsembleParams) -> np.ndarray:
        positions = np.arange(self.i_min, self.i_min + self.n_positions)
        rows = (positions >= 0) & (positions < p.L1)
        return np.repeat(rows[:, None], self.L2, axis=1)

    def free_mask(self) -> np.ndarray:
        return ~self.frozen

    def copy(self) -> "Constellation":
        return Constellation(self.values.copy(), self.frozen.copy(), self.i_min, self.epsilon, self.delta)

    def with_values(self, values: np.ndarray) -> "Constellation":
        return Constellation(values, self.frozen.copy(), self.i_min, self.epsilon, self.delta)

    def crop(self, i_lo: int, i_hi: int) -> "Constellation":
        """Copy of the rows for positions ``i_lo .. i_hi`` that exist in the grid."""

        r0 = max(i_lo - self.i_min, 0)
        r1 = min(i_hi - self.i_min + 1, self.n_positions)
        if r1 <= r0:
            raise ParameterError(f"positions {i_lo}..{i_hi} do not overlap the constellation")
        return Constellation(
            self.values[r0:r1].copy(),
            self.frozen[r0:r1].copy(),
            self.i_min + r0,
            self.epsilon,
            self.delta,
        )

    def sections(self) -> Iterator[tuple[SectionIndex, float]]:
        for r in range(self.n_positions):
            for j in range(self.L2):
                yield SectionIndex(self.i_min + r, j), float(self.values[r, j])

    def write_csv(self, target: Union[str, Path, IO[str]]) -> None:
        """Dump ``i,j,x`` rows for debugging."""

        if isinstance(target, (str, Path)):
            with Path(target).open("w", encoding="utf-8", newline="") as handle:
                self.write_csv(handle)
            return
        writer = csv.writer(target)
        writer.writerow(["i", "j", "x"])
        for at, x in self.sections():
            writer.writerow([at.i, at.j, repr(x)])


@dataclass
class CheckMessages:
    """CN-to-VN erasure probabilities y_(a,j) for CN positions ``a_min ..``."""

    values: np.ndarray
    a_min: int = 0
    L2: int = field(init=False)

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        self.L2 = int(self.values.shape[1])

    def value(self, at: SectionIndex) -> float:
        r = at.i - self.a_min
        if 0 <= r < self.values.shape[0]:
            return float(self.values[r, at.j % self.L2])
        return 0.0


__all__ = ["Constellation", "CheckMessages", "DEFAULT_DELTA"]
