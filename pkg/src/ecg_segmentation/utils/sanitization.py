# SPDX-License-Identifier: MIT

"""Utilities for handling NaN, infinite and non-serializable values.

Manifests, run info and structured log records are written as JSON; these
helpers turn numpy scalars and arrays, enums and paths into plain Python
values and replace non-finite numbers with ``None`` on the way.
"""

from __future__ import annotations

import math
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np  # type: ignore[import]
from pydantic import BaseModel


def sanitize_number(value: Any) -> float | None:
    """Finite float of ``value``, or ``None``.

    Undefined metrics (Se with no reference points, sigma of an empty error
    list) and diverged losses arrive here as NaN or inf; JSON has no spelling
    for them, so they are written as ``null``.  Values that do not convert
    to float also give ``None``.
    """
    try:
        num = float(value)
    except (TypeError, ValueError):
        return None
    return num if math.isfinite(num) else None


def to_serializable(value: Any) -> Any:
    """Convert a value to a JSON-serializable form.

    Recursively traverses lists, tuples and dictionaries, converting numpy
    scalars and arrays, enums, paths and pydantic models to native Python
    types, and replacing NaN/inf with ``None``.
    """
    if isinstance(value, BaseModel):
        return to_serializable(value.model_dump())
    if isinstance(value, np.ndarray):
        return to_serializable(value.tolist())
    if isinstance(value, (list, tuple, set)):
        return [to_serializable(v) for v in value]
    if isinstance(value, dict):
        return {str(to_serializable(k)): to_serializable(v) for k, v in value.items()}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return value.as_posix()
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return sanitize_number(value)
    return value
