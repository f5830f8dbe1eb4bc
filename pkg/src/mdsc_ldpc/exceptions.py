"""Error hierarchy shared by every analysis module and the CLI."""

from __future__ import annotations

from typing import Any, Dict, Optional


def _restore(cls: type, args: tuple, state: Dict[str, Any]) -> "MdscError":
    exc = Exception.__new__(cls)
    exc.args = args
    exc.__dict__.update(state)
    return exc


class MdscError(Exception):
    """Base class; ``reason`` is a stable machine-readable code."""

    reason = "error"

    def __init__(self, message: str, **payload: Any) -> None:
        super().__init__(message)
        self.message = message
        self.payload: Dict[str, Any] = dict(payload)

    def __str__(self) -> str:  # pragma: no cover - trivial
        return self.message or self.reason

    def __reduce__(self):
        # worker processes hand errors back through pickle
        return (_restore, (type(self), self.args, dict(self.__dict__)))


class ParameterError(MdscError, ValueError):
    reason = "invalid_parameters"


class PreconditionViolated(MdscError, ValueError):
    reason = "precondition_violated"


class DegenerateCoupling(ParameterError):
    reason = "degenerate_coupling"


class WindowSpecError(MdscError, ValueError):
    reason = "invalid_window_spec"


class EmptySpace(MdscError, ValueError):
    reason = "empty_search_space"


class EvaluationFailure(MdscError):
    reason = "evaluation_failed"

    @property
    def spec(self) -> Optional[tuple[int, ...]]:
        return self.payload.get("spec")


class SamplingExhausted(MdscError):
    reason = "sampling_exhausted"


class EnumerationTooLarge(MdscError):
    reason = "enumeration_too_large"


class UsageError(MdscError):
    reason = "usage"


class WindowDecodeFailure(MdscError):
    """A window configuration could not bring its targeted section to delta.

    ``cause`` is ``"stall"`` when a fixed point above delta was reached and
    ``"cap"`` when the per-window iteration cap ran out. ``profile`` is filled
    in by the chain decoder with the partial iteration profile.
    """

    reason = "window_decode_failure"

    def __init__(
        self,
        message: str,
        *,
        tvn: tuple[int, int],
        iterations: int,
        value: float,
        cause: str,
        profile: Any = None,
    ) -> None:
        super().__init__(message, tvn=tvn, iterations=iterations, value=value, cause=cause)
        self.tvn = tvn
        self.iterations = iterations
        self.value = value
        self.cause = cause
        self.profile = profile


__all__ = [
    "MdscError",
    "ParameterError",
    "PreconditionViolated",
    "DegenerateCoupling",
    "WindowSpecError",
    "EmptySpace",
    "EvaluationFailure",
    "SamplingExhausted",
    "EnumerationTooLarge",
    "UsageError",
    "WindowDecodeFailure",
]
