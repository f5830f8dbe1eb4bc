"""Window-size vectors, the section sets they induce, and processing orders."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from numpy.random import Generator, Philox

from ..ensemble import EnsembleParams, SectionIndex
from ..exceptions import WindowSpecError


@dataclass(frozen=True, order=True)
class WindowSpec:
    """Window sizes ``W_r`` for the segment ``r`` steps after the targeted one."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        try:
            sizes = tuple(int(w) for w in self.sizes)
        except (TypeError, ValueError) as exc:
            raise WindowSpecError(f"window sizes must be integers, got {self.sizes!r}") from exc
        if not sizes:
            raise WindowSpecError("window spec must have at least one entry")
        if any(w < 0 for w in sizes):
            raise WindowSpecError(f"window sizes must be non-negative, got {sizes}", spec=sizes)
        if sizes[0] < 1:
            raise WindowSpecError("W_0 must be at least 1 so the targeted section is decoded", spec=sizes)
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def parse(cls, text: str) -> "WindowSpec":
        """Parse a comma separated list such as ``"5,5,4,2,3,4,5"``."""

        parts = [part.strip() for part in str(text).strip().strip("()[]").split(",")]
        if not parts or any(not part for part in parts):
            raise WindowSpecError(f"cannot parse window spec {text!r}")
        try:
            return cls(tuple(int(part) for part in parts))
        except ValueError as exc:
            raise WindowSpecError(f"cannot parse window spec {text!r}") from exc

    @classmethod
    def uniform(cls, L2: int, size: int) -> "WindowSpec":
        return cls((size,) * L2)

    @property
    def L2(self) -> int:
        return len(self.sizes)

    @property
    def complexity(self) -> int:
        return sum(self.sizes)

    @property
    def max_size(self) -> int:
        return max(self.sizes)

    def size_for(self, offset: int) -> int:
        return self.sizes[offset % self.L2]

    def check(self, p: EnsembleParams) -> "WindowSpec":
        if self.L2 != p.L2:
            raise WindowSpecError(
                f"window spec has {self.L2} entries but the ensemble has L2={p.L2}", spec=self.sizes
            )
        return self

    def dominated_by(self, other: "WindowSpec") -> bool:
        """True when every entry is at most the matching entry of ``other``."""

        return self.L2 == other.L2 and all(a <= b for a, b in zip(self.sizes, other.sizes))

    def __str__(self) -> str:
        return ",".join(str(w) for w in self.sizes)

    def label(self) -> str:
        return "(" + ", ".join(str(w) for w in self.sizes) + ")"


@dataclass(frozen=True)
class WindowConfiguration:
    """Section set of one window, shifted so ``W_0`` sits on the targeted segment."""

    spec: WindowSpec
    tvn: SectionIndex

    @property
    def sections(self) -> frozenset[SectionIndex]:
        L2 = self.spec.L2
        return frozenset(
            SectionIndex(self.tvn.i + k, (self.tvn.j + r) % L2)
            for r in range(L2)
            for k in range(self.spec.size_for(r))
        )

    def in_range_sections(self, p: EnsembleParams) -> frozenset[SectionIndex]:
        return frozenset(at for at in self.sections if p.in_range(at))

    def position_span(self) -> tuple[int, int]:
        return self.tvn.i, self.tvn.i + self.spec.max_size - 1


ORDER_NAMES = ("natural", "reverse", "random")


@dataclass(frozen=True)
class DecodeSchedule:
    """Position-major sequence of targeted sections using ``order`` within a position."""

    order: tuple[int, ...]
    L1: int
    name: str = "custom"
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        order = tuple(int(j) for j in self.order)
        if sorted(order) != list(range(len(order))):
            raise WindowSpecError(f"segment order {order} is not a permutation of range({len(order)})")
        if self.L1 < 1:
            raise WindowSpecError("schedule needs L1 >= 1")
        object.__setattr__(self, "order", order)

    @classmethod
    def natural(cls, L1: int, L2: int) -> "DecodeSchedule":
        return cls(tuple(range(L2)), L1, "natural")

    @classmethod
    def reverse(cls, L1: int, L2: int) -> "DecodeSchedule":
        return cls(tuple(reversed(range(L2))), L1, "reverse")

    @classmethod
    def random(cls, L1: int, L2: int, seed: int) -> "DecodeSchedule":
        rng = Generator(Philox(int(seed)))
        return cls(tuple(int(j) for j in rng.permutation(L2)), L1, "random", int(seed))

    @classmethod
    def named(cls, name: str, L1: int, L2: int, seed: Optional[int] = None) -> "DecodeSchedule":
        key = name.strip().lower()
        if key in {"natural", "0"}:
            return cls.natural(L1, L2)
        if key in {"reverse", "1"}:
            return cls.reverse(L1, L2)
        if key in {"random", "2"}:
            if seed is None:
                raise WindowSpecError("the random order needs an explicit seed")
            return cls.random(L1, L2, seed)
        try:
            order = tuple(int(part) for part in key.split(","))
        except ValueError as exc:
            raise WindowSpecError(f"unknown processing order {name!r}") from exc
        if len(order) != L2:
            raise WindowSpecError(f"custom order {order} must list all {L2} segments")
        return cls(order, L1, "custom")

    @classmethod
    def for_params(cls, p: EnsembleParams, name: str = "natural", seed: Optional[int] = None) -> "DecodeSchedule":
        return cls.named(name, p.L1, p.L2, seed)

    @property
    def L2(self) -> int:
        return len(self.order)

    def __len__(self) -> int:
        return self.L1 * self.L2

    def __iter__(self) -> Iterator[SectionIndex]:
        for i in range(self.L1):
            for j in self.order:
                yield SectionIndex(i, j)

    def tvns(self) -> list[SectionIndex]:
        return list(self)


__all__ = [
    "WindowSpec",
    "WindowConfiguration",
    "DecodeSchedule",
    "ORDER_NAMES",
]
