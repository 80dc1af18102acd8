# SPDX-License-Identifier: MIT

"""Preprocessing exports: the filter spec and baseline wander removal."""

from .models import FilterSpec, window_samples
from .filters import median_filter, preprocess_record, remove_baseline

__all__ = [
    "FilterSpec",
    "window_samples",
    "median_filter",
    "preprocess_record",
    "remove_baseline",
]
