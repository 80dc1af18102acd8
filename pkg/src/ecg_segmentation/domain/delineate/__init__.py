# SPDX-License-Identifier: MIT

"""Decoding exports: winner mask, run extraction and inference."""

from .models import InferenceResult, PredictedPoints, WinnerMask
from .decoding import (
    DEFAULT_MIN_RUN,
    channel_runs,
    extract_points,
    infer,
    points_to_annotations,
    predict_probs,
    winner_mask,
)

__all__ = [
    "InferenceResult",
    "PredictedPoints",
    "WinnerMask",
    "DEFAULT_MIN_RUN",
    "channel_runs",
    "extract_points",
    "infer",
    "points_to_annotations",
    "predict_probs",
    "winner_mask",
]
