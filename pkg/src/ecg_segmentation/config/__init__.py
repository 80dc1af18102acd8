# SPDX-License-Identifier: MIT

"""Configuration package.

This package exposes the :class:`Settings` class used to configure the
toolkit at runtime and the recording/reference constants used across domains.
"""

from .settings import Settings  # noqa: F401
from .constants import (
    LEAD_NAMES,
    RECORD_LENGTH,
    REFERENCE_PARAM_COUNT,
    SAMPLING_RATE,
)

__all__ = [
    "Settings",
    "LEAD_NAMES",
    "RECORD_LENGTH",
    "REFERENCE_PARAM_COUNT",
    "SAMPLING_RATE",
]
