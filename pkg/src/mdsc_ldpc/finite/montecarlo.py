"""Monte Carlo estimates checked against the closed forms."""

from __future__ import annotations

import logging
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Optional

import numpy as np
from tqdm import tqdm

from ..ensemble import EnsembleParams, p_stop, purged_expectation
from ..exceptions import ParameterError, PreconditionViolated
from .graph import Layout, draw_cn_sockets, draw_vn_edges, make_rng

logger = logging.getLogger(__name__)

BLOCK = 10000


@dataclass(frozen=True)
class MCEstimate:
    estimate: float
    stderr: float
    trials: int
    seed: int
    hits: int
    reference: Optional[float] = None
    socket_model: Optional[float] = None

    def sigma_distance(self, value: float) -> float:
        if self.stderr == 0:
            return 0.0 if value == self.estimate else math.inf
        return abs(self.estimate - value) / self.stderr

    def to_dict(self) -> dict[str, Any]:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "hits": self.hits,
            "cn_uniform": self.reference,
            "socket_model": self.socket_model,
        }


def binomial_stderr(estimate: float, trials: int) -> float:
    return math.sqrt(estimate * (1.0 - estimate) / trials)


def _blocks(trials: int) -> list[tuple[int, int]]:
    return [(b, min(BLOCK, trials - b * BLOCK)) for b in range((trials + BLOCK - 1) // BLOCK)]


def _show_progress(blocks: int) -> bool:
    stream = getattr(sys, "stderr", None)
    return blocks > 4 and bool(stream and hasattr(stream, "isatty") and stream.isatty())


def cn_uniform_pstop(p: EnsembleParams, M: int) -> Optional[Fraction]:
    """Exact size-2 probability when every VN edge lands in one common CN section.

    Each VN then holds a uniform d_l-subset of the section's CNs, so the value
    is ``1 / C(n_cn, d_l)``. Other ensembles have no closed form here.
    """

    single_pool = p.gamma1 == 1 and (p.T == 0 or (p.T == 1 and p.gamma2 == 2))
    if not single_pool:
        return None
    n_cn = p.cns_per_section(M)
    if n_cn < p.dl:
        return None
    return Fraction(1, comb(n_cn, p.dl))


def mc_pstop(p: EnsembleParams, M: int, trials: int, seed: int) -> MCEstimate:
    """Frequency with which VNs 0 and 1 of section (0, 0) share all their CNs.

    Only the edges of those two VNs are drawn; their law is the same as in a
    full ``vn`` construction because VN edge draws are independent.
    """

    if trials < 1:
        raise ParameterError("trials must be at least 1", field="trials")
    layout = Layout.of(p, M)
    if M < 2:
        raise PreconditionViolated("mc_pstop needs at least two VNs per section", M=M)
    logger.info("mc_pstop seeded", extra={"event": "mc_pstop", "seed": seed, "iterations": trials})
    hits = 0
    blocks = _blocks(trials)
    for block, size in tqdm(blocks, desc="mc_pstop", disable=not _show_progress(len(blocks))):
        rng = make_rng(seed, block)
        zeros = np.zeros(2 * size, dtype=np.int64)
        edges = draw_vn_edges(rng, p, layout, zeros, zeros).reshape(size, 2, p.dl)
        ordered = np.sort(edges, axis=2)
        hits += int(np.all(ordered[:, 0, :] == ordered[:, 1, :], axis=1).sum())
    estimate = hits / trials
    reference = cn_uniform_pstop(p, M)
    try:
        socket = float(p_stop(p, M))
    except PreconditionViolated:
        socket = None
    return MCEstimate(
        estimate,
        binomial_stderr(estimate, trials),
        trials,
        seed,
        hits,
        None if reference is None else float(reference),
        socket,
    )


@dataclass(frozen=True)
class PurgedEstimate:
    position: int
    mean: float
    stderr: float
    expected: float
    graphs: int
    seed: int

    @property
    def sigma_distance(self) -> float:
        if self.stderr == 0:
            return 0.0 if self.mean == self.expected else math.inf
        return abs(self.mean - self.expected) / self.stderr

    def to_dict(self) -> dict[str, Any]:
        return {
            "position": self.position,
            "mean": self.mean,
            "stderr": self.stderr,
            "expected": self.expected,
            "graphs": self.graphs,
            "seed": self.seed,
        }


def purged_cn_mc(p: EnsembleParams, M: int, position: int, graphs: int, seed: int) -> PurgedEstimate:
    """Average number of purged CNs in section ``(position, 0)`` of ``cn`` graphs.

    Sockets of different CNs are drawn independently, so only the sockets of
    that section are sampled for each graph.
    """

    if graphs < 2:
        raise ParameterError("need at least two graphs for a standard error", field="graphs")
    layout = Layout.of(p, M)
    if not 0 <= position < layout.cn_positions:
        raise ParameterError(f"CN position {position} is outside [0, {layout.cn_positions})")
    counts = np.empty(graphs, dtype=np.int64)
    done = 0
    for block, size in _blocks(graphs):
        rng = make_rng(seed, block)
        positions = np.full(size * layout.n_cn, position, dtype=np.int64)
        segments = np.zeros(size * layout.n_cn, dtype=np.int64)
        sockets = draw_cn_sockets(rng, p, layout, positions, segments).reshape(size, layout.n_cn, p.dr)
        counts[done : done + size] = np.all(sockets < 0, axis=2).sum(axis=1)
        done += size
    mean = float(counts.mean())
    stderr = float(counts.std(ddof=1) / math.sqrt(graphs))
    expected = float(purged_expectation(p, M, position))
    logger.info(
        "purged CN estimate",
        extra={"event": "purged_mc", "seed": seed, "probe": position},
    )
    return PurgedEstimate(position, mean, stderr, expected, graphs, seed)


__all__ = [
    "BLOCK",
    "MCEstimate",
    "PurgedEstimate",
    "binomial_stderr",
    "cn_uniform_pstop",
    "mc_pstop",
    "purged_cn_mc",
]
