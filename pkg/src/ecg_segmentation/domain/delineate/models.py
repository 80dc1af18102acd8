# SPDX-License-Identifier: MIT

"""Decoding domain models."""

from __future__ import annotations

from typing import Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..common.exceptions import ShapeError
from ..common.models import WaveType
from ..nnet.models import N_CLASSES


class WinnerMask(BaseModel):
    """Binary ``(4, T)`` mask with exactly one active channel per time step."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    bits: np.ndarray

    @model_validator(mode="after")
    def _one_hot(self) -> "WinnerMask":
        if self.bits.ndim != 2 or self.bits.shape[0] != N_CLASSES:
            raise ShapeError(f"mask must have shape (4, T), got {self.bits.shape}")
        if not np.all(self.bits.sum(axis=0) == 1):
            raise ShapeError("mask must have exactly one active channel per time step")
        return self

    @property
    def length(self) -> int:
        return int(self.bits.shape[1])

    def channel(self, wave_type: WaveType) -> np.ndarray:
        return self.bits[wave_type.channel]


class PredictedPoints(BaseModel):
    """Onset and offset indices per wave type, each strictly increasing."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    onsets: Dict[WaveType, np.ndarray] = Field(default_factory=dict)
    offsets: Dict[WaveType, np.ndarray] = Field(default_factory=dict)

    def of(self, wave_type: WaveType, onset: bool) -> np.ndarray:
        table = self.onsets if onset else self.offsets
        return table.get(wave_type, np.empty(0, dtype=np.int64))


class InferenceResult(BaseModel):
    """Raw probabilities, winner mask and decoded points for one record."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    probs: np.ndarray
    mask: WinnerMask
    points: PredictedPoints
