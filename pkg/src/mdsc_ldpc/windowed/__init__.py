"""Non-uniform windowed decoding on top of the density-evolution engine."""

from .decoder import (
    DEFAULT_MAX_WINDOW_ITERS,
    IterationProfile,
    WindowRecord,
    decode_chain,
    decode_window,
    window_step,
    window_view,
)
from .spec import ORDER_NAMES, DecodeSchedule, WindowConfiguration, WindowSpec
from .sweeps import SweepPoint, compare_orders, profile_sweep, run_point, worst_case_iterations
from .worst_case import (
    chain_decodes,
    wc_bracket,
    wc_threshold,
    worst_case_bracket,
    worst_case_constellation,
    worst_case_decodes,
    worst_case_threshold,
)

__all__ = [
    "DEFAULT_MAX_WINDOW_ITERS",
    "ORDER_NAMES",
    "WindowSpec",
    "WindowConfiguration",
    "DecodeSchedule",
    "IterationProfile",
    "WindowRecord",
    "window_view",
    "window_step",
    "decode_window",
    "decode_chain",
    "worst_case_constellation",
    "worst_case_decodes",
    "worst_case_bracket",
    "worst_case_threshold",
    "chain_decodes",
    "wc_bracket",
    "wc_threshold",
    "SweepPoint",
    "run_point",
    "profile_sweep",
    "compare_orders",
    "worst_case_iterations",
]
