"""Threshold bisection over the channel erasure probability."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Any, Callable, Optional

from ..ensemble import EnsembleParams
from ..exceptions import ParameterError
from .engine import DECaps, DEKernel, full_code_decodes

logger = logging.getLogger(__name__)

Probe = Callable[[float], bool]


@dataclass(frozen=True)
class ThresholdBracket:
    """``lower`` decodes, ``upper`` does not; ``probes`` counts evaluations."""

    lower: float
    upper: float
    probes: int
    resolution: float

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def to_dict(self) -> dict[str, Any]:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "threshold": self.midpoint,
            "probes": self.probes,
            "resolution": self.resolution,
        }


def bisect_threshold(
    probe: Probe,
    resolution: float = 1e-5,
    lower: float = 0.0,
    upper: float = 1.0,
    *,
    label: str = "",
) -> ThresholdBracket:
    """Shrink ``[lower, upper]`` until its width is at most ``resolution``.

    The endpoints are taken on trust: ``lower`` is assumed to decode and
    ``upper`` to fail.
    """

    if not resolution > 0:
        raise ParameterError(f"resolution must be positive, got {resolution}", field="resolution")
    if not 0.0 <= lower <= upper <= 1.0:
        raise ParameterError(f"invalid bracket [{lower}, {upper}]")
    probes = 0
    started = time.perf_counter()
    while upper - lower > resolution:
        mid = 0.5 * (lower + upper)
        ok = probe(mid)
        probes += 1
        logger.debug(
            "bisection probe %s", "decodes" if ok else "fails",
            extra={"event": "probe", "epsilon": f"{mid:.8f}", "spec": label or None, "probe": probes},
        )
        if ok:
            lower = mid
        else:
            upper = mid
    logger.debug(
        "bisection finished",
        extra={
            "event": "bracket",
            "spec": label or None,
            "probe": probes,
            "duration_ms": int((time.perf_counter() - started) * 1000),
        },
    )
    return ThresholdBracket(lower, upper, probes, resolution)


def bp_threshold_bracket(
    p: EnsembleParams,
    delta: float = 1e-12,
    resolution: float = 1e-5,
    caps: Optional[DECaps] = None,
) -> ThresholdBracket:
    caps = caps or DECaps()
    kernel = DEKernel(p)

    def probe(epsilon: float) -> bool:
        return full_code_decodes(p, epsilon, delta, caps, kernel=kernel).converged

    return bisect_threshold(probe, resolution, label=p.label())


def bp_threshold(
    p: EnsembleParams,
    delta: float = 1e-12,
    resolution: float = 1e-5,
    caps: Optional[DECaps] = None,
) -> float:
    """Full-code BP threshold: midpoint of the final bisection bracket on [0, 1]."""

    return bp_threshold_bracket(p, delta, resolution, caps).midpoint


__all__ = ["ThresholdBracket", "bisect_threshold", "bp_threshold_bracket", "bp_threshold"]
