# SPDX-License-Identifier: MIT

"""Utility functions for the ECG segmentation toolkit.

Reusable helpers for JSON sanitisation, logging configuration and seed
derivation, shared by the domain, infrastructure and application layers.
"""

from .sanitization import sanitize_number, to_serializable
from .logging import configure_logging
from .seeding import derive_rng, derive_seed

__all__ = [
    "sanitize_number",
    "to_serializable",
    "configure_logging",
    "derive_rng",
    "derive_seed",
]
