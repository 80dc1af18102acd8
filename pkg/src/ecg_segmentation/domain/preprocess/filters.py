# SPDX-License-Identifier: MIT

"""Baseline wander removal with two cascaded median filters.

The first (short) window suppresses P and QRS, the second (long) window
suppresses T; what remains is the slow baseline, which is subtracted from
the signal.  High-frequency noise is deliberately left in place.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np
from scipy.ndimage import median_filter as _nd_median

from ..common.exceptions import DataValidationError
from ..dataset.models import EcgRecord
from .models import FilterSpec


def median_filter(x: Sequence[float] | np.ndarray, window: int) -> np.ndarray:
    """Running median with replicate padding.

    Parameters
    ----------
    x:
        One-dimensional signal.
    window:
        Odd window length in samples, ``1 <= window <= len(x)``.

    Returns
    -------
    numpy.ndarray
        Filtered signal of the same length; every value is drawn from ``x``.
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise DataValidationError(f"median_filter expects a 1-D signal, got shape {arr.shape}")
    if window < 1 or window % 2 == 0:
        raise DataValidationError(f"median window must be a positive odd count, got {window}")
    if window > arr.shape[0]:
        raise DataValidationError(f"median window {window} exceeds signal length {arr.shape[0]}")
    # mode="nearest" replicates the edge samples, (window - 1) / 2 on each side.
    return _nd_median(arr, size=window, mode="nearest")


def remove_baseline(x: Sequence[float] | np.ndarray, spec: FilterSpec | None = None) -> np.ndarray:
    """Return ``x - median(median(x, w1), w2)``."""
    spec = spec or FilterSpec()
    arr = np.asarray(x, dtype=np.float64)
    if arr.shape[0] < spec.window_2:
        raise DataValidationError(
            f"signal of {arr.shape[0]} samples is shorter than the {spec.window_2}-sample window"
        )
    baseline = median_filter(median_filter(arr, spec.window_1), spec.window_2)
    return arr - baseline


def preprocess_record(
    record: EcgRecord, spec: FilterSpec | None = None, *, threads: int = 1
) -> EcgRecord:
    """Baseline-correct every lead of ``record``; the annotation is kept."""
    spec = spec or FilterSpec()
    names = list(record.leads)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            corrected = list(pool.map(lambda n: remove_baseline(record.leads[n], spec), names))
    else:
        corrected = [remove_baseline(record.leads[n], spec) for n in names]
    return record.replace_leads(dict(zip(names, corrected)))
