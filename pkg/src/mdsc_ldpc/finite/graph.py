"""Finite-length Tanner graphs drawn from the coupled ensemble.

Two constructions are available:

``vn``
    Every in-range VN places d_l edges. Each edge flips a coin with heads
    probability T; heads sends it to section ``(i+k, (j+r) mod L2)`` with
    ``r`` in ``1 .. gamma2-1``, tails to ``(i+k, j)``, ``k`` uniform in
    ``[gamma1]``. The CN is uniform within the section. A repeated CN is
    redrawn within the section up to ``M d_l / d_r`` times, then the section
    itself is redrawn.
``cn``
    Every CN socket picks ``(a-k, j)`` or ``(a-k, (j-r) mod L2)`` the same way
    and then a uniform VN of that section. Sockets whose position falls
    outside the chain stay unconnected.

VN ids are ``(i*L2 + j)*M + idx``; CN ids are ``(a*L2 + j)*n_cn + c`` with CN
positions ``a`` in ``[0, L1 + gamma1 - 1)``. CNs left without neighbours are
purged.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterator, Optional, Sequence, Union

import numpy as np
from numpy.random import Generator, Philox

from ..ensemble import EnsembleParams
from ..exceptions import ParameterError, SamplingExhausted

logger = logging.getLogger(__name__)

MODELS = ("vn", "cn")
SECTION_RETRIES = 64


def make_rng(seed: int, stream: int = 0) -> Generator:
    """Counter-based generator; ``stream`` selects an independent substream."""

    return Generator(Philox(key=(int(stream) << 64) | int(seed)))


@dataclass(frozen=True)
class Layout:
    """Id arithmetic shared by the samplers and the graph."""

    L1: int
    L2: int
    M: int
    n_cn: int
    cn_positions: int

    @classmethod
    def of(cls, p: EnsembleParams, M: int) -> "Layout":
        return cls(p.L1, p.L2, M, p.cns_per_section(M), p.L1 + p.gamma1 - 1)

    @property
    def n_vn(self) -> int:
        return self.L1 * self.L2 * self.M

    @property
    def n_cn_total(self) -> int:
        return self.cn_positions * self.L2 * self.n_cn

    def vn_id(self, i: int, j: int, idx: int) -> int:
        return (i * self.L2 + j) * self.M + idx

    def cn_id(self, a: int, j: int, c: int) -> int:
        return (a * self.L2 + j) * self.n_cn + c

    def vn_section(self, v: int) -> tuple[int, int, int]:
        section, idx = divmod(int(v), self.M)
        i, j = divmod(section, self.L2)
        return i, j, idx

    def cn_section(self, c: int) -> tuple[int, int, int]:
        section, idx = divmod(int(c), self.n_cn)
        a, j = divmod(section, self.L2)
        return a, j, idx


def _offsets(rng: Generator, p: EnsembleParams, shape: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    """Position offsets ``k`` and segment offsets ``r`` (0 for in-segment edges)."""

    k = rng.integers(0, p.gamma1, size=shape)
    if p.gamma2 > 1 and p.T > 0:
        heads = rng.random(shape) < float(p.T)
        r = np.where(heads, rng.integers(1, p.gamma2, size=shape), 0)
    else:
        r = np.zeros(shape, dtype=np.int64)
    return k, r


def _rows_with_repeats(ids: np.ndarray) -> np.ndarray:
    ordered = np.sort(ids, axis=1)
    same = ordered[:, 1:] == ordered[:, :-1]
    if ids.dtype.kind == "i":
        same &= ordered[:, 1:] >= 0
    return np.nonzero(same.any(axis=1))[0]


def draw_vn_edges(
    rng: Generator,
    p: EnsembleParams,
    layout: Layout,
    positions: np.ndarray,
    segments: np.ndarray,
) -> np.ndarray:
    """CN ids for the d_l edges of each VN at ``(positions[v], segments[v])``."""

    count = len(positions)
    shape = (count, p.dl)
    k, r = _offsets(rng, p, shape)
    a = positions[:, None] + k
    seg = (segments[:, None] + r) % layout.L2
    c = rng.integers(0, layout.n_cn, size=shape)
    edges = (a * layout.L2 + seg) * layout.n_cn + c
    for row in _rows_with_repeats(edges):
        edges[row] = _repair_vn(rng, p, layout, int(positions[row]), int(segments[row]), edges[row])
    return edges


def _repair_vn(
    rng: Generator, p: EnsembleParams, layout: Layout, i: int, j: int, row: np.ndarray
) -> np.ndarray:
    chosen: list[int] = []
    for original in row.tolist():
        section = original // layout.n_cn
        candidate = original
        if candidate in chosen:
            candidate = -1
            for _ in range(SECTION_RETRIES):
                for _ in range(layout.n_cn):
                    trial = section * layout.n_cn + int(rng.integers(0, layout.n_cn))
                    if trial not in chosen:
                        candidate = trial
                        break
                if candidate >= 0:
                    break
                k, r = _offsets(rng, p, (1,))
                section = (i + int(k[0])) * layout.L2 + (j + int(r[0])) % layout.L2
            if candidate < 0:
                raise SamplingExhausted(
                    f"no non-parallel CN found for VN section ({i}, {j}) after {SECTION_RETRIES} section redraws",
                    section=(i, j),
                    retries=SECTION_RETRIES,
                )
            logger.debug("parallel edge redrawn", extra={"event": "resample", "tvn": (i, j)})
        chosen.append(candidate)
    return np.asarray(chosen, dtype=row.dtype)


def draw_cn_sockets(
    rng: Generator,
    p: EnsembleParams,
    layout: Layout,
    positions: np.ndarray,
    segments: np.ndarray,
) -> np.ndarray:
    """VN ids for the d_r sockets of each CN; ``-1`` marks an unconnected socket."""

    count = len(positions)
    shape = (count, p.dr)
    k, r = _offsets(rng, p, shape)
    vn_pos = positions[:, None] - k
    seg = (segments[:, None] - r) % layout.L2
    idx = rng.integers(0, layout.M, size=shape)
    connected = (vn_pos >= 0) & (vn_pos < layout.L1)
    sockets = np.where(connected, (vn_pos * layout.L2 + seg) * layout.M + idx, -1)
    for row in _rows_with_repeats(sockets):
        sockets[row] = _repair_cn(rng, p, layout, int(positions[row]), int(segments[row]), sockets[row])
    return sockets


def _repair_cn(
    rng: Generator, p: EnsembleParams, layout: Layout, a: int, j: int, row: np.ndarray
) -> np.ndarray:
    chosen: list[int] = []
    result: list[int] = []
    for original in row.tolist():
        if original < 0:
            result.append(-1)
            continue
        section = original // layout.M
        candidate = original
        if candidate in chosen:
            candidate = -1
            for _ in range(SECTION_RETRIES):
                for _ in range(layout.M):
                    trial = section * layout.M + int(rng.integers(0, layout.M))
                    if trial not in chosen:
                        candidate = trial
                        break
                if candidate >= 0:
                    break
                k, r = _offsets(rng, p, (1,))
                pos = a - int(k[0])
                if not 0 <= pos < layout.L1:
                    break
                section = pos * layout.L2 + (j - int(r[0])) % layout.L2
        if candidate >= 0:
            chosen.append(candidate)
        result.append(candidate)
    return np.asarray(result, dtype=row.dtype)


@dataclass(frozen=True)
class TannerGraph:
    """Sampled bipartite graph; ``vn_adj`` and ``cn_adj`` are mutual inverses."""

    params: EnsembleParams
    M: int
    model: str
    vn_adj: tuple[tuple[int, ...], ...]
    cn_adj: tuple[tuple[int, ...], ...]
    purged: frozenset[int]
    seed: Optional[int] = None

    @property
    def layout(self) -> Layout:
        return Layout.of(self.params, self.M)

    @property
    def n_vn(self) -> int:
        return len(self.vn_adj)

    @property
    def n_cn(self) -> int:
        return len(self.cn_adj)

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, neighbours in enumerate(self.vn_adj):
            for c in neighbours:
                yield v, c

    def edge_count(self) -> int:
        return sum(len(n) for n in self.vn_adj)

    def vn_degrees(self) -> list[int]:
        return [len(n) for n in self.vn_adj]

    def cn_degrees(self) -> list[int]:
        return [len(n) for n in self.cn_adj]

    def is_consistent(self) -> bool:
        """True when ``cn_adj`` lists exactly the edges of ``vn_adj``."""

        forward = sorted(self.edges())
        backward = sorted((v, c) for c, neighbours in enumerate(self.cn_adj) for v in neighbours)
        return forward == backward

    def section_cns(self, a: int, j: int) -> range:
        layout = self.layout
        start = layout.cn_id(a, j, 0)
        return range(start, start + layout.n_cn)

    def write_edge_list(self, target: Union[str, Path, IO[str]]) -> None:
        """One line per edge: ``vn_i vn_j vn_idx cn_i cn_j cn_idx``."""

        if isinstance(target, (str, Path)):
            with Path(target).open("w", encoding="utf-8") as handle:
                self.write_edge_list(handle)
            return
        layout = self.layout
        for v, c in self.edges():
            vi, vj, vidx = layout.vn_section(v)
            ca, cj, cidx = layout.cn_section(c)
            target.write(f"{vi} {vj} {vidx} {ca} {cj} {cidx}\n")


def _assemble(
    p: EnsembleParams,
    M: int,
    model: str,
    layout: Layout,
    pairs: Sequence[tuple[int, int]],
    seed: Optional[int],
) -> TannerGraph:
    vn_lists: list[list[int]] = [[] for _ in range(layout.n_vn)]
    cn_lists: list[list[int]] = [[] for _ in range(layout.n_cn_total)]
    for v, c in pairs:
        vn_lists[v].append(c)
        cn_lists[c].append(v)
    purged = frozenset(c for c, neighbours in enumerate(cn_lists) if not neighbours)
    return TannerGraph(
        p,
        M,
        model,
        tuple(tuple(n) for n in vn_lists),
        tuple(tuple(n) for n in cn_lists),
        purged,
        seed,
    )


def sample_graph(p: EnsembleParams, M: int, seed: int, model: str = "vn") -> TannerGraph:
    """Draw one Tanner graph with the given construction and seed."""

    if model not in MODELS:
        raise ParameterError(f"unknown sampling model {model!r}; expected one of {MODELS}")
    layout = Layout.of(p, M)
    rng = make_rng(seed)
    logger.debug("sampling graph", extra={"event": "sample_graph", "seed": seed})
    if model == "vn":
        sections = np.arange(layout.L1 * layout.L2)
        positions = np.repeat(sections // layout.L2, M)
        segments = np.repeat(sections % layout.L2, M)
        edges = draw_vn_edges(rng, p, layout, positions, segments)
        pairs = [(v, int(c)) for v, row in enumerate(edges.tolist()) for c in row]
    else:
        sections = np.arange(layout.cn_positions * layout.L2)
        positions = np.repeat(sections // layout.L2, layout.n_cn)
        segments = np.repeat(sections % layout.L2, layout.n_cn)
        sockets = draw_cn_sockets(rng, p, layout, positions, segments)
        pairs = [(int(v), c) for c, row in enumerate(sockets.tolist()) for v in row if v >= 0]
    return _assemble(p, M, model, layout, pairs, seed)


__all__ = [
    "MODELS",
    "Layout",
    "TannerGraph",
    "make_rng",
    "draw_vn_edges",
    "draw_cn_sockets",
    "sample_graph",
]
