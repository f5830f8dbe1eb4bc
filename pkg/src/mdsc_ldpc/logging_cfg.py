"""Logging setup for the command-line tools.

Environment switches:

* ``MDSC_LOG_LEVEL`` - root level (default ``WARNING``)
* ``MDSC_DEBUG`` - truthy enables DEBUG and mirrors records to the console
* ``MDSC_LOG_FILE`` / ``MDSC_LOG_DIR`` - destination of the rotating log file
"""

from __future__ import annotations

import logging
import logging.config
import os
import sys
from pathlib import Path

_EXTRA_KEYS = ("event", "epsilon", "spec", "tvn", "iterations", "probe", "seed", "duration_ms")


def _truthy(raw: str | None) -> bool:
    if raw is None:
        return False
    return raw.strip().lower() in {"1", "true", "yes", "on"}


def _stderr_supports_tty() -> bool:
    stream = getattr(sys, "stderr", None)
    return bool(stream and hasattr(stream, "isatty") and stream.isatty())


def _expand(path_value: str) -> Path:
    return Path(os.path.expandvars(path_value)).expanduser()


def resolve_log_file() -> Path:
    """Return the target log file path based on environment overrides."""
    file_override = os.environ.get("MDSC_LOG_FILE", "").strip()
    if file_override:
        return _expand(file_override)

    dir_override = os.environ.get("MDSC_LOG_DIR", "").strip()
    if dir_override:
        return _expand(dir_override) / "mdsc_ldpc.log"

    if os.name == "nt":
        base = os.environ.get("LOCALAPPDATA")
        if base:
            return Path(base).expanduser() / "mdsc_ldpc" / "logs" / "mdsc_ldpc.log"
        return Path.home() / "AppData" / "Local" / "mdsc_ldpc" / "logs" / "mdsc_ldpc.log"

    return Path.home() / ".local" / "share" / "mdsc_ldpc" / "logs" / "mdsc_ldpc.log"


def _with_extras(record: logging.LogRecord, base: str) -> str:
    extras: list[str] = []
    for key in _EXTRA_KEYS:
        value = getattr(record, key, None)
        if value is None or value == "":
            continue
        extras.append(f"{key}={value}")
    if extras:
        return f"{base} {' '.join(extras)}"
    return base


class KeyValueFormatter(logging.Formatter):
    def __init__(self) -> None:
        super().__init__(
            "%(asctime)s %(levelname)s %(name)s: %(message)s",
            "%Y-%m-%dT%H:%M:%S%z",
        )

    def format(self, record: logging.LogRecord) -> str:  # type: ignore[override]
        return _with_extras(record, super().format(record))


class ColorFormatter(logging.Formatter):
    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[31m",
    }
    RESET = "\033[0m"

    def format(self, record: logging.LogRecord) -> str:  # type: ignore[override]
        msg = _with_extras(record, super().format(record))
        color = self.COLORS.get(record.levelname)
        if color and _stderr_supports_tty():
            msg = f"{color}{msg}{self.RESET}"
        return msg


def configure_logging() -> Path | None:
    """Configure application logging; returns the log file or ``None`` for console."""

    level_name = (os.environ.get("MDSC_LOG_LEVEL", "WARNING") or "").strip().upper() or "WARNING"
    debug_enabled = _truthy(os.environ.get("MDSC_DEBUG"))
    if debug_enabled:
        level_name = "DEBUG"
    level = getattr(logging, level_name, logging.WARNING)
    if not isinstance(level, int):
        level = logging.WARNING

    log_file = resolve_log_file()
    destination: Path | None = log_file
    handlers: dict[str, dict[str, object]] = {}
    root_handlers: list[str] = []
    try:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        with log_file.open("a", encoding="utf-8"):
            pass
        handlers["file"] = {
            "class": "logging.handlers.RotatingFileHandler",
            "filename": str(log_file),
            "maxBytes": 5_000_000,
            "backupCount": 3,
            "encoding": "utf-8",
            "formatter": "standard",
            "level": level,
        }
        root_handlers.append("file")
    except OSError:
        destination = None

    if destination is None or debug_enabled:
        handlers["console"] = {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "color",
            "level": logging.DEBUG if debug_enabled else level,
        }
        root_handlers.append("console")

    logging.config.dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {
                "standard": {"()": KeyValueFormatter},
                "color": {
                    "()": ColorFormatter,
                    "format": "%(levelname)s %(name)s: %(message)s",
                },
            },
            "handlers": handlers,
            "root": {"level": level, "handlers": root_handlers},
        }
    )
    logging.getLogger("mdsc_ldpc").setLevel(level)

    configured_logger = logging.getLogger(__name__)
    if destination is None:
        configured_logger.warning("Logging to console because MDSC_LOG_FILE/MDSC_LOG_DIR is unavailable.")
    else:
        configured_logger.debug("Logging configured for file %s", destination)
    return destination


__all__ = ["configure_logging", "resolve_log_file", "KeyValueFormatter", "ColorFormatter"]
