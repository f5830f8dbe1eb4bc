"""Windowed density evolution over a full chain of window configurations."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from ..density import Constellation, DECaps, DEKernel, SectionBelow, de_step, run_de, section_mask
from ..ensemble import EnsembleParams
from ..exceptions import ParameterError, WindowDecodeFailure, WindowSpecError
from .spec import DecodeSchedule, WindowConfiguration, WindowSpec

logger = logging.getLogger(__name__)

DEFAULT_MAX_WINDOW_ITERS = 10000


@dataclass(frozen=True)
class WindowRecord:
    t: int
    i: int
    j: int
    iterations: int


@dataclass
class IterationProfile:
    """Iterations used by each processed window configuration of one chain run."""

    epsilon: float
    delta: float
    spec: WindowSpec
    order: str
    seed: Optional[int] = None
    expected: int = 0
    records: list[WindowRecord] = field(default_factory=list)

    @property
    def per_wc(self) -> list[int]:
        return [record.iterations for record in self.records]

    @property
    def average(self) -> float:
        if not self.records:
            return 0.0
        return sum(self.per_wc) / len(self.records)

    @property
    def complete(self) -> bool:
        return len(self.records) == self.expected

    def header(self) -> dict[str, Any]:
        return {
            "epsilon": self.epsilon,
            "delta": self.delta,
            "W": list(self.spec.sizes),
            "order": self.order,
            "seed": self.seed,
            "average": self.average,
            "windows": len(self.records),
        }


def window_view(
    global_c: Constellation, wc: WindowConfiguration, p: EnsembleParams
) -> tuple[Constellation, np.ndarray]:
    """Rows around the window with everything outside it frozen, plus its active mask.

    Only positions within ``gamma1 - 1`` of the window are ever read, so the
    copy is cropped to that band.
    """

    reach = p.gamma1 - 1
    first, last = wc.position_span()
    z = global_c.crop(first - reach, last + reach)
    active = section_mask(z, wc.in_range_sections(p)) & z.free_mask()
    z.frozen = z.frozen | ~active
    return z, active


def window_step(
    z: Constellation,
    wc: WindowConfiguration,
    p: EnsembleParams,
    *,
    kernel: Optional[DEKernel] = None,
) -> Constellation:
    """One flooding round restricted to the in-range sections of ``wc``."""

    active = section_mask(z, wc.in_range_sections(p))
    return de_step(z, p, active, kernel=kernel)


def decode_window(
    global_c: Constellation,
    wc: WindowConfiguration,
    p: EnsembleParams,
    delta: Optional[float] = None,
    max_window_iters: int = DEFAULT_MAX_WINDOW_ITERS,
    *,
    tol_fp: float = 1e-10,
    kernel: Optional[DEKernel] = None,
) -> tuple[Constellation, int]:
    """Decode one window and write back only its targeted section.

    Raises :class:`WindowDecodeFailure` when the targeted value is still above
    ``delta`` at a fixed point or after ``max_window_iters`` iterations.
    """

    if not p.in_range(wc.tvn):
        raise ParameterError(f"targeted section {wc.tvn.as_tuple()} is outside the chain")
    target = global_c.delta if delta is None else float(delta)
    z, active = window_view(global_c, wc, p)
    success = SectionBelow.at(z, wc.tvn, target)
    outcome = run_de(
        z, p, active, success, DECaps(max_window_iters, tol_fp), kernel=kernel or DEKernel(p)
    )
    tvn_value = outcome.final.value(wc.tvn)
    if not outcome.converged:
        cause = "cap" if outcome.capped else "stall"
        logger.debug(
            "window failed to reach delta",
            extra={
                "event": "window_failure",
                "tvn": wc.tvn.as_tuple(),
                "iterations": outcome.iterations,
                "epsilon": global_c.epsilon,
            },
        )
        raise WindowDecodeFailure(
            f"window at {wc.tvn.as_tuple()} stopped at {tvn_value:.3e} > {target:g} ({cause})",
            tvn=wc.tvn.as_tuple(),
            iterations=outcome.iterations,
            value=tvn_value,
            cause=cause,
        )
    updated = global_c.copy()
    row = updated.row(wc.tvn.i)
    assert row is not None
    updated.values[row, wc.tvn.j] = tvn_value
    return updated, outcome.iterations


WindowHook = Callable[[WindowRecord, Constellation], None]


def decode_chain(
    p: EnsembleParams,
    spec: WindowSpec,
    schedule: DecodeSchedule,
    epsilon: float,
    delta: float = 1e-12,
    max_window_iters: int = DEFAULT_MAX_WINDOW_ITERS,
    *,
    tol_fp: float = 1e-10,
    on_window: Optional[WindowHook] = None,
) -> IterationProfile:
    """Process every window of ``schedule`` in turn, each seeing earlier write-backs.

    A :class:`WindowDecodeFailure` propagates with ``profile`` set to the
    windows completed so far.
    """

    spec.check(p)
    if schedule.L1 != p.L1 or schedule.L2 != p.L2:
        raise WindowSpecError(
            f"schedule covers {schedule.L1}x{schedule.L2} sections but the ensemble has {p.L1}x{p.L2}"
        )
    kernel = DEKernel(p)
    current = Constellation.full_code(p, epsilon, delta)
    profile = IterationProfile(epsilon, delta, spec, schedule.name, schedule.seed, len(schedule))
    for t, tvn in enumerate(schedule):
        wc = WindowConfiguration(spec, tvn)
        try:
            current, iterations = decode_window(
                current, wc, p, delta, max_window_iters, tol_fp=tol_fp, kernel=kernel
            )
        except WindowDecodeFailure as exc:
            exc.profile = profile
            exc.payload["t"] = t
            raise
        record = WindowRecord(t, tvn.i, tvn.j, iterations)
        profile.records.append(record)
        if on_window is not None:
            on_window(record, current)
    logger.info(
        "chain decoded",
        extra={"event": "chain", "epsilon": epsilon, "spec": str(spec), "iterations": sum(profile.per_wc)},
    )
    return profile


__all__ = [
    "DEFAULT_MAX_WINDOW_ITERS",
    "WindowRecord",
    "IterationProfile",
    "window_view",
    "window_step",
    "decode_window",
    "decode_chain",
]
