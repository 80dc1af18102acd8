# SPDX-License-Identifier: MIT

"""Logging configuration for the ECG segmentation toolkit.

Call :func:`configure_logging` once at startup (the CLI does).  Training,
screening and pipeline code attach structured fields through ``extra=``
(``epoch``, ``loss``, ``stage``, ``iteration`` ...); both formatters keep them.
"""

from __future__ import annotations

import json
import logging
from typing import Any, Dict

from ..config.settings import Settings, settings
from .sanitization import to_serializable

# Attributes every LogRecord carries; anything else came in through ``extra=``.
_RESERVED = set(vars(logging.LogRecord("", 0, "", 0, "", None, None))) | {"message", "asctime"}

PLAIN_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
DATE_FORMAT = "%Y-%m-%dT%H:%M:%S%z"


def structured_fields(record: logging.LogRecord) -> Dict[str, Any]:
    """JSON-safe copy of the fields passed with ``extra=``."""
    return {
        key: to_serializable(value)
        for key, value in vars(record).items()
        if key not in _RESERVED and not key.startswith("_")
    }


class JsonFormatter(logging.Formatter):
    """One JSON object per record: timestamp, level, name, message, extras."""

    def format(self, record: logging.LogRecord) -> str:  # noqa: D401
        payload: Dict[str, Any] = {
            "timestamp": self.formatTime(record, self.datefmt),
            "level": record.levelname,
            "name": record.name,
            "message": record.getMessage(),
        }
        payload.update(structured_fields(record))
        if record.exc_info:
            payload["exc_info"] = self.formatException(record.exc_info)
        return json.dumps(payload)


class PlainFormatter(logging.Formatter):
    """Human-readable lines with the structured fields appended as ``key=value``."""

    def __init__(self) -> None:
        super().__init__(fmt=PLAIN_FORMAT, datefmt=DATE_FORMAT)

    def format(self, record: logging.LogRecord) -> str:  # noqa: D401
        line = super().format(record)
        fields = structured_fields(record)
        if not fields:
            return line
        extras = " ".join(f"{key}={value}" for key, value in sorted(fields.items()))
        head, sep, tail = line.partition("\n")
        return f"{head} | {extras}{sep}{tail}"


def build_formatter(log_format: str) -> logging.Formatter:
    return JsonFormatter() if log_format == "json" else PlainFormatter()


def configure_logging(cfg: Settings | None = None) -> None:
    """Install a single stream handler on the root logger.

    Parameters
    ----------
    cfg:
        Settings to read ``log_level`` and ``log_format`` from; the
        module-level instance when ``None``.
    """
    cfg = cfg or settings
    root = logging.getLogger()
    root.setLevel(getattr(logging, cfg.log_level.upper(), logging.INFO))
    # repeated CLI calls in one process must not stack handlers
    for existing in list(root.handlers):
        root.removeHandler(existing)
    handler = logging.StreamHandler()
    handler.setFormatter(build_formatter(cfg.log_format))
    root.addHandler(handler)
