# SPDX-License-Identifier: MIT

"""Adaptive-tolerance matching of predicted to reference points.

The tolerance radius is 150 ms at 70 BPM and shrinks linearly with the
cardiac cycle at faster rates; slower rates keep 150 ms.  The heart rate is
estimated from the reference QRS onsets only, so the tolerance never depends
on the model output.

Two one-to-one matching rules are available:

``optimal``
    maximum number of pairs within the radius, ties broken by the smallest
    total absolute error (an assignment problem solved with
    :func:`scipy.optimize.linear_sum_assignment`).
``greedy``
    each reference point, in ascending order, takes the nearest unconsumed
    predicted point within the radius.  Greedy can lose pairs: with
    reference ``[10, 16]``, predicted ``[6, 12]`` and a 5-sample radius it
    finds one pair where two exist.
"""

from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from ...config.constants import SAMPLING_RATE
from .models import MatchingStrategy, PointMatch

logger = logging.getLogger(__name__)

DEFAULT_RADIUS_MS = 150.0
DEFAULT_REFERENCE_BPM = 70.0


def tolerance_radius(
    qrs_onsets: Sequence[int],
    fs: int = SAMPLING_RATE,
    *,
    radius_ms: float = DEFAULT_RADIUS_MS,
    reference_bpm: float = DEFAULT_REFERENCE_BPM,
) -> float:
    """Tolerance radius in ms for a record with the given reference QRS onsets.

    Fewer than two onsets leave the heart rate undefined; the base radius is
    returned and a warning logged.
    """
    onsets = np.sort(np.asarray(qrs_onsets, dtype=np.float64))
    if onsets.size < 2:
        logger.warning(
            "Heart rate undefined with %d QRS onsets, using %.0f ms radius",
            onsets.size,
            radius_ms,
            extra={"qrs_onsets": int(onsets.size)},
        )
        return float(radius_ms)
    cycle_ms = float(np.mean(np.diff(onsets))) * 1000.0 / fs
    heart_rate = 60000.0 / cycle_ms
    return float(min(radius_ms, radius_ms * reference_bpm / heart_rate))


def _greedy_pairs(ref: np.ndarray, pred: np.ndarray, radius: float) -> List[Tuple[int, int]]:
    used = np.zeros(pred.size, dtype=bool)
    pairs: List[Tuple[int, int]] = []
    for i, r in enumerate(ref):
        distance = np.abs(pred - r)
        distance[used] = np.inf
        if distance.size == 0:
            break
        j = int(np.argmin(distance))  # earliest predicted point wins ties
        if distance[j] <= radius:
            used[j] = True
            pairs.append((i, j))
    return pairs


def _optimal_pairs(ref: np.ndarray, pred: np.ndarray, radius: float) -> List[Tuple[int, int]]:
    if ref.size == 0 or pred.size == 0:
        return []
    distance = np.abs(ref[:, None] - pred[None, :])
    allowed = distance <= radius
    # one out-of-radius pair costs more than any full set of in-radius pairs
    penalty = min(ref.size, pred.size) * radius + 1.0
    cost = np.where(allowed, distance, penalty)
    rows, cols = linear_sum_assignment(cost)
    return [(int(i), int(j)) for i, j in zip(rows, cols) if allowed[i, j]]


def match_points(
    reference: Sequence[int],
    predicted: Sequence[int],
    radius_ms: float,
    fs: int = SAMPLING_RATE,
    strategy: MatchingStrategy = "optimal",
) -> PointMatch:
    """One-to-one matching of two point lists within ``radius_ms``.

    Returns TP with the signed errors (predicted - reference, ms) of the
    matched pairs in reference order; unmatched reference points are FN and
    unmatched predicted points FP.
    """
    ref = np.asarray(reference, dtype=np.float64)
    pred = np.asarray(predicted, dtype=np.float64)
    radius = radius_ms * fs / 1000.0
    if strategy == "greedy":
        pairs = _greedy_pairs(ref, pred, radius)
    elif strategy == "optimal":
        pairs = _optimal_pairs(ref, pred, radius)
    else:
        raise ValueError(f"unknown matching strategy '{strategy}'")

    pairs.sort()
    errors = [float((pred[j] - ref[i]) * 1000.0 / fs) for i, j in pairs]
    return PointMatch(
        tp=len(pairs),
        fp=int(pred.size) - len(pairs),
        fn=int(ref.size) - len(pairs),
        errors_ms=errors,
    )
