"""Finite-length graphs, peeling and Monte Carlo cross-checks."""

from .graph import MODELS, Layout, TannerGraph, draw_cn_sockets, draw_vn_edges, make_rng, sample_graph
from .montecarlo import (
    MCEstimate,
    PurgedEstimate,
    binomial_stderr,
    cn_uniform_pstop,
    mc_pstop,
    purged_cn_mc,
)
from .oracle import socket_oracle
from .peeling import ErasurePattern, failure_rate, is_stopping_set, peel

__all__ = [
    "MODELS",
    "Layout",
    "TannerGraph",
    "make_rng",
    "draw_vn_edges",
    "draw_cn_sockets",
    "sample_graph",
    "ErasurePattern",
    "peel",
    "is_stopping_set",
    "failure_rate",
    "MCEstimate",
    "PurgedEstimate",
    "binomial_stderr",
    "cn_uniform_pstop",
    "mc_pstop",
    "purged_cn_mc",
    "socket_oracle",
]
