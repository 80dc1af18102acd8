# SPDX-License-Identifier: MIT

"""Shared domain enumerations."""

from __future__ import annotations

from enum import Enum
from typing import Tuple


class WaveType(str, Enum):
    """Segment of the cardiac cycle.  Values match the interchange format."""

    P = "p"
    QRS = "qrs"
    T = "t"

    @property
    def channel(self) -> int:
        """Index of the network output channel carrying this wave."""
        return _CHANNELS[self]


_CHANNELS = {WaveType.P: 0, WaveType.QRS: 1, WaveType.T: 2}


class PointType(str, Enum):
    """Boundary point scored by the evaluator."""

    P_ONSET = "p_onset"
    P_OFFSET = "p_offset"
    QRS_ONSET = "qrs_onset"
    QRS_OFFSET = "qrs_offset"
    T_ONSET = "t_onset"
    T_OFFSET = "t_offset"

    @property
    def wave(self) -> WaveType:
        return WaveType(self.value.split("_")[0])

    @property
    def is_onset(self) -> bool:
        return self.value.endswith("onset")

    @property
    def label(self) -> str:
        """Table heading, e.g. ``QRS begin``."""
        return f"{self.wave.value.upper()} {'begin' if self.is_onset else 'end'}"


POINT_TYPES: Tuple[PointType, ...] = tuple(PointType)


class SplitTag(str, Enum):
    TRAIN = "train"
    TEST = "test"
