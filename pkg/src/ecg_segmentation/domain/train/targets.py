# SPDX-License-Identifier: MIT

"""Rasterisation of expert annotation into one-hot network targets."""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from ...config.constants import BACKGROUND_CHANNEL, RASTER_PRECEDENCE, RECORD_LENGTH
from ..common.models import WaveType
from ..dataset.models import WaveAnnotation
from ..nnet.models import N_CLASSES

logger = logging.getLogger(__name__)


def rasterize_labels(
    annotations: Sequence[WaveAnnotation], length: int = RECORD_LENGTH
) -> np.ndarray:
    """Per-sample class index: wave channel on ``[onset, offset]``, background elsewhere.

    Where waves of different types overlap, QRS wins over P and P over T.
    """
    labels = np.full(length, BACKGROUND_CHANNEL, dtype=np.int8)
    # Paint lowest precedence first so higher precedence overwrites it.
    for name in reversed(RASTER_PRECEDENCE):
        wave_type = WaveType(name)
        for wave in annotations:
            if wave.wave_type != wave_type:
                continue
            span = labels[wave.onset : wave.offset + 1]
            clash = (span != BACKGROUND_CHANNEL) & (span != wave_type.channel)
            if clash.any():
                logger.warning(
                    "Expert %s wave [%d, %d] overlaps another wave type; %s takes precedence",
                    wave_type.value.upper(),
                    wave.onset,
                    wave.offset,
                    wave_type.value.upper(),
                )
            span[:] = wave_type.channel
    return labels


def rasterize_targets(
    annotations: Sequence[WaveAnnotation], length: int = RECORD_LENGTH
) -> np.ndarray:
    """One-hot ``(4, length)`` target: P, QRS, T and background channels."""
    labels = rasterize_labels(annotations, length)
    return np.eye(N_CLASSES, dtype=np.float64)[labels].T.copy()
