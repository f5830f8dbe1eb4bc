"""Window-size search under a complexity budget."""

from .optimizer import Candidate, SearchReport, optimize
from .space import SearchSpace, composition_count, enumerate_windows

__all__ = [
    "SearchSpace",
    "enumerate_windows",
    "composition_count",
    "Candidate",
    "SearchReport",
    "optimize",
]
