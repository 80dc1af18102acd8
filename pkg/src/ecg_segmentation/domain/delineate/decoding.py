# SPDX-License-Identifier: MIT

"""From network probabilities to boundary points.

At every time step the channel with the largest probability wins (ties go to
the lowest channel index: P, QRS, T, background).  Each maximal run of a wave
channel that is at least ``min_run`` samples long yields one onset (first
index) and one offset (last index).
"""

from __future__ import annotations

from typing import List, Sequence, Tuple, Union

import numpy as np

from ...config.constants import DEFAULT_LEAD
from ..common.exceptions import EmptyEnsembleError
from ..common.models import WaveType
from ..dataset.models import EcgRecord, WaveAnnotation
from ..dataset.records import select_lead
from ..nnet.models import N_CLASSES, ModelParams
from ..nnet.network import forward
from .models import InferenceResult, PredictedPoints, WinnerMask

DEFAULT_MIN_RUN = 10  # 20 ms at 500 Hz

ModelOrEnsemble = Union[ModelParams, Sequence[ModelParams]]


def winner_mask(probs: np.ndarray) -> WinnerMask:
    winners = np.argmax(np.asarray(probs), axis=0)  # first maximum wins ties
    return WinnerMask(bits=np.eye(N_CLASSES, dtype=np.uint8)[winners].T.copy())


def channel_runs(bits: np.ndarray, min_run: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """Start and (inclusive) end indices of the runs of ones in ``bits``."""
    padded = np.concatenate([[0], np.asarray(bits, dtype=np.int8), [0]])
    edges = np.flatnonzero(padded[1:] != padded[:-1])
    starts, stops = edges[::2], edges[1::2]
    keep = (stops - starts) >= min_run
    return starts[keep].astype(np.int64), (stops[keep] - 1).astype(np.int64)


def extract_points(mask: WinnerMask, min_run: int = DEFAULT_MIN_RUN) -> PredictedPoints:
    onsets = {}
    offsets = {}
    for wave_type in WaveType:
        starts, ends = channel_runs(mask.channel(wave_type), min_run)
        onsets[wave_type] = starts
        offsets[wave_type] = ends
    return PredictedPoints(onsets=onsets, offsets=offsets)


def predict_probs(signal: np.ndarray, model: ModelOrEnsemble) -> np.ndarray:
    """``(4, T)`` probabilities of one model or the member mean of an ensemble."""
    x = np.asarray(signal)[None, :]
    if isinstance(model, ModelParams):
        return forward(x, model)
    members = list(model)
    if not members:
        raise EmptyEnsembleError("cannot run inference with an empty ensemble")
    total = forward(x, members[0]).astype(np.float64)
    for member in members[1:]:
        total += forward(x, member)
    return total / len(members)


def infer(
    record: EcgRecord,
    lead: str = DEFAULT_LEAD,
    model: ModelOrEnsemble | None = None,
    *,
    min_run: int = DEFAULT_MIN_RUN,
) -> InferenceResult:
    """Probabilities, winner mask and points for one preprocessed record."""
    if model is None:
        raise EmptyEnsembleError("no model given for inference")
    probs = predict_probs(select_lead(record, lead), model)
    mask = winner_mask(probs)
    return InferenceResult(probs=probs, mask=mask, points=extract_points(mask, min_run))


def points_to_annotations(result: InferenceResult) -> List[WaveAnnotation]:
    """Predicted waves in the interchange schema; the peak is the run's most probable sample."""
    waves: List[WaveAnnotation] = []
    for wave_type in WaveType:
        channel = result.probs[wave_type.channel]
        for onset, offset in zip(result.points.of(wave_type, True), result.points.of(wave_type, False)):
            peak = int(onset + np.argmax(channel[onset : offset + 1]))
            waves.append(
                WaveAnnotation(wave_type=wave_type, onset=int(onset), peak=peak, offset=int(offset))
            )
    return sorted(waves, key=lambda w: (w.onset, w.wave_type.value))
