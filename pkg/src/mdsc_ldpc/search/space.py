"""Window-size vectors with a fixed total complexity and per-entry bounds."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from ..exceptions import EmptySpace, ParameterError
from ..windowed import WindowSpec


@dataclass(frozen=True)
class SearchSpace:
    """Compositions of ``C`` into ``L2`` parts in ``[w_min, w_max]`` with ``W_0 >= 1``."""

    L2: int
    C: int
    w_min: int = 0
    w_max: Optional[int] = None

    def __post_init__(self) -> None:
        if self.L2 < 1:
            raise ParameterError("L2 must be positive", field="L2")
        if self.C < 1:
            raise ParameterError("complexity must be positive", field="C")
        if self.w_min < 0:
            raise ParameterError("w_min must be non-negative", field="w_min")
        if self.w_max is None:
            object.__setattr__(self, "w_max", self.C)

    @property
    def upper(self) -> int:
        assert self.w_max is not None
        return self.w_max

    def lower_bounds(self) -> tuple[int, ...]:
        return (max(self.w_min, 1),) + (self.w_min,) * (self.L2 - 1)

    def is_empty(self) -> bool:
        lows = self.lower_bounds()
        return self.upper < lows[0] or not sum(lows) <= self.C <= self.L2 * self.upper

    def contains(self, spec: WindowSpec) -> bool:
        lows = self.lower_bounds()
        return (
            spec.L2 == self.L2
            and spec.complexity == self.C
            and all(lo <= w <= self.upper for lo, w in zip(lows, spec.sizes))
        )

    def enumerate(self) -> Iterator[WindowSpec]:
        return enumerate_windows(self)

    def __iter__(self) -> Iterator[WindowSpec]:
        return enumerate_windows(self)

    def to_dict(self) -> dict[str, int]:
        return {"L2": self.L2, "C": self.C, "w_min": self.w_min, "w_max": self.upper}


def enumerate_windows(space: SearchSpace) -> Iterator[WindowSpec]:
    """Every bounded composition exactly once, in lexicographic order."""

    if space.is_empty():
        raise EmptySpace(
            f"no window vector of length {space.L2} sums to {space.C} within "
            f"[{space.w_min}, {space.upper}]",
            **space.to_dict(),
        )
    lows = space.lower_bounds()
    high = space.upper
    tail_min = [sum(lows[k:]) for k in range(space.L2 + 1)]
    tail_max = [(space.L2 - k) * high for k in range(space.L2 + 1)]

    def extend(k: int, remaining: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if k == space.L2:
            if remaining == 0:
                yield prefix
            return
        first = max(lows[k], remaining - tail_max[k + 1])
        last = min(high, remaining - tail_min[k + 1])
        for w in range(first, last + 1):
            yield from extend(k + 1, remaining - w, prefix + (w,))

    for sizes in extend(0, space.C, ()):
        yield WindowSpec(sizes)


def composition_count(space: SearchSpace) -> int:
    """Coefficient of ``z^C`` in the product of the per-entry generating polynomials."""

    if space.is_empty():
        return 0
    product = np.array([1], dtype=np.int64)
    for lo in space.lower_bounds():
        factor = np.zeros(space.upper + 1, dtype=np.int64)
        factor[lo:] = 1
        product = np.convolve(product, factor)
    return int(product[space.C]) if space.C < len(product) else 0


__all__ = ["SearchSpace", "enumerate_windows", "composition_count"]
