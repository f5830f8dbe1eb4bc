"""Flooding-schedule BEC density evolution over a section grid.

A step computes every CN message from the current constellation and then every
VN value from those messages; frozen and inactive sections keep their value.
The CN message at position ``a`` mixes VN positions ``a - k`` (``k < gamma1``)
and the VN value at ``i`` mixes CN positions ``i + k``. Segments couple forward
with weights ``(1 - T)/gamma1`` in-segment and ``T/(gamma1 (gamma2 - 1))`` for
each of the ``gamma2 - 1`` neighbouring segments.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..ensemble import EnsembleParams, SectionIndex
from ..exceptions import ParameterError
from .constellation import CheckMessages, Constellation

logger = logging.getLogger(__name__)

Success = Callable[[Constellation], bool]
StepHook = Callable[[int, Constellation], None]


@dataclass(frozen=True)
class DECaps:
    max_iterations: int = 200000
    tol_fp: float = 1e-10

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ParameterError("max_iterations must be at least 1", field="max_iterations")
        if self.tol_fp < 0:
            raise ParameterError("tol_fp must be non-negative", field="tol_fp")

    @classmethod
    def from_config(cls, config: Any) -> "DECaps":
        return cls(max_iterations=int(config.max_iterations), tol_fp=float(config.tol_fp))


@dataclass
class DEOutcome:
    converged: bool
    iterations: int
    final: Constellation
    stall: bool
    capped: bool = False
    max_change: float = 0.0

    def __post_init__(self) -> None:
        if self.converged and self.stall:
            raise ValueError("an outcome cannot both converge and stall")

    def to_record(self) -> dict[str, Any]:
        return {
            "epsilon": self.final.epsilon,
            "iterations": self.iterations,
            "converged": self.converged,
            "stall": self.stall,
        }


# scalar reference updates -------------------------------------------------


def _clip(value: float) -> float:
    return min(max(value, 0.0), 1.0)


def cn_update(c: Constellation, p: EnsembleParams, at: SectionIndex) -> float:
    """Erasure probability of the CN message at ``at``, read straight off ``c``."""

    in_sum = 0.0
    off_sum = 0.0
    for k in range(p.gamma1):
        in_sum += c.value(SectionIndex.of(at.i - k, at.j, p.L2))
        for r in range(1, p.gamma2):
            off_sum += c.value(SectionIndex.of(at.i - k, at.j - r, p.L2))
    inner = float(p.in_weight) * in_sum
    if p.gamma2 > 1:
        inner += float(p.off_weight) * off_sum
    return 1.0 - (1.0 - _clip(inner)) ** (p.dr - 1)


def vn_update(y: CheckMessages, p: EnsembleParams, at: SectionIndex, epsilon: float) -> float:
    in_sum = 0.0
    off_sum = 0.0
    for k in range(p.gamma1):
        in_sum += y.value(SectionIndex.of(at.i + k, at.j, p.L2))
        for r in range(1, p.gamma2):
            off_sum += y.value(SectionIndex.of(at.i + k, at.j + r, p.L2))
    inner = float(p.in_weight) * in_sum
    if p.gamma2 > 1:
        inner += float(p.off_weight) * off_sum
    return float(epsilon) * _clip(inner) ** (p.dl - 1)


# vectorized kernel --------------------------------------------------------


class DEKernel:
    """Array form of one flooding step for a fixed ensemble."""

    def __init__(self, p: EnsembleParams) -> None:
        self.params = p
        self.gamma1 = p.gamma1
        self.offsets = tuple(range(1, p.gamma2))
        self.in_weight = float(p.in_weight)
        self.off_weight = float(p.off_weight)
        self.cn_power = p.dr - 1
        self.vn_power = p.dl - 1

    def _mix(self, sums: np.ndarray, sign: int) -> np.ndarray:
        mixed = self.in_weight * sums
        if self.offsets and self.off_weight:
            off = np.zeros_like(sums)
            for r in self.offsets:
                off += np.roll(sums, sign * r, axis=1)
            mixed = mixed + self.off_weight * off
        return np.clip(mixed, 0.0, 1.0)

    def check_messages(self, values: np.ndarray) -> np.ndarray:
        """CN messages for positions ``i_min .. i_max + gamma1 - 1``."""

        pad = self.gamma1 - 1
        padded = np.pad(values, ((pad, pad), (0, 0))) if pad else values
        sums = sliding_window_view(padded, self.gamma1, axis=0).sum(axis=-1)
        return 1.0 - (1.0 - self._mix(sums, 1)) ** self.cn_power

    def variable_values(self, y: np.ndarray, epsilon: float) -> np.ndarray:
        sums = sliding_window_view(y, self.gamma1, axis=0).sum(axis=-1)
        return epsilon * self._mix(sums, -1) ** self.vn_power

    def step(self, values: np.ndarray, epsilon: float) -> np.ndarray:
        return self.variable_values(self.check_messages(values), epsilon)


def check_messages(c: Constellation, p: EnsembleParams) -> CheckMessages:
    return CheckMessages(DEKernel(p).check_messages(c.values), c.i_min)


def section_mask(c: Constellation, sections: Iterable[SectionIndex]) -> np.ndarray:
    """Boolean grid marking the given sections that fall inside ``c``."""

    mask = np.zeros(c.values.shape, dtype=bool)
    for at in sections:
        r = c.row(at.i)
        if r is not None:
            mask[r, at.j % c.L2] = True
    return mask


def _active_mask(c: Constellation, active: Optional[np.ndarray]) -> np.ndarray:
    if active is None:
        return c.free_mask()
    active = np.asarray(active, dtype=bool)
    if active.shape != c.values.shape:
        raise ParameterError("active mask must match the constellation grid")
    return active & c.free_mask()


def de_step(
    c: Constellation,
    p: EnsembleParams,
    active: Optional[np.ndarray] = None,
    *,
    kernel: Optional[DEKernel] = None,
) -> Constellation:
    """One synchronous round; only ``active`` non-frozen sections change."""

    mask = _active_mask(c, active)
    if not mask.any():
        return c.copy()
    kernel = kernel or DEKernel(p)
    updated = np.where(mask, kernel.step(c.values, c.epsilon), c.values)
    return c.with_values(updated)


# success predicates -------------------------------------------------------


@dataclass(frozen=True)
class AllBelow:
    """Every section marked in ``mask`` is at most ``delta``."""

    mask: np.ndarray
    delta: float

    def __call__(self, c: Constellation) -> bool:
        return bool(np.all(c.values[self.mask] <= self.delta))


@dataclass(frozen=True)
class SectionBelow:
    row: int
    column: int
    delta: float

    @classmethod
    def at(cls, c: Constellation, section: SectionIndex, delta: Optional[float] = None) -> "SectionBelow":
        r = c.row(section.i)
        if r is None:
            raise ParameterError(f"section {section.as_tuple()} lies outside the constellation")
        return cls(r, section.j % c.L2, c.delta if delta is None else float(delta))

    def __call__(self, c: Constellation) -> bool:
        return bool(c.values[self.row, self.column] <= self.delta)


def in_range_success(c: Constellation, p: EnsembleParams) -> AllBelow:
    return AllBelow(c.in_range_mask(p), c.delta)


def never(_: Constellation) -> bool:
    return False


# iteration driver ---------------------------------------------------------


def run_de(
    c: Constellation,
    p: EnsembleParams,
    active: Optional[np.ndarray] = None,
    success: Optional[Success] = None,
    caps: DECaps = DECaps(),
    *,
    kernel: Optional[DEKernel] = None,
    on_step: Optional[StepHook] = None,
) -> DEOutcome:
    """Iterate :func:`de_step` until ``success`` holds, a fixed point, or the cap.

    Success is checked before the fixed-point test. A fixed point is declared
    when the largest change of an active section drops below ``tol_fp`` times
    the largest active value (never less than ``delta``), so a geometric decay
    towards zero is not mistaken for one.
    """

    kernel = kernel or DEKernel(p)
    work = c.copy()
    mask = _active_mask(work, active)
    has_active = bool(mask.any())
    if success is None:
        success = in_range_success(work, p)

    change = 0.0
    for iteration in range(1, caps.max_iterations + 1):
        previous = work.values
        if has_active:
            updated = np.where(mask, kernel.step(previous, work.epsilon), previous)
            change = float(np.max(np.abs(updated - previous)[mask]))
            peak = float(np.max(updated[mask]))
        else:
            updated = previous
            change = 0.0
            peak = 0.0
        work.values = updated
        if on_step is not None:
            on_step(iteration, work)
        if success(work):
            return DEOutcome(True, iteration, work, False, max_change=change)
        if change < caps.tol_fp * max(peak, work.delta):
            return DEOutcome(False, iteration, work, True, max_change=change)
    logger.debug(
        "density evolution hit the iteration cap",
        extra={"event": "de_cap", "epsilon": work.epsilon, "iterations": caps.max_iterations},
    )
    return DEOutcome(False, caps.max_iterations, work, True, capped=True, max_change=change)


def full_code_decodes(
    p: EnsembleParams,
    epsilon: float,
    delta: float = 1e-12,
    caps: DECaps = DECaps(),
    *,
    kernel: Optional[DEKernel] = None,
) -> DEOutcome:
    start = Constellation.full_code(p, epsilon, delta)
    return run_de(start, p, None, in_range_success(start, p), caps, kernel=kernel)


__all__ = [
    "DECaps",
    "DEOutcome",
    "DEKernel",
    "cn_update",
    "vn_update",
    "check_messages",
    "section_mask",
    "de_step",
    "AllBelow",
    "SectionBelow",
    "in_range_success",
    "never",
    "run_de",
    "full_code_decodes",
]
