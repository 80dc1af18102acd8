# SPDX-License-Identifier: MIT

"""Preprocessing domain models."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ...config.constants import SAMPLING_RATE


def window_samples(duration_ms: float, fs: int = SAMPLING_RATE) -> int:
    """Odd sample count of a median window: 200 ms → 101, 600 ms → 301 at 500 Hz."""
    return int(round(duration_ms * fs / 1000.0)) | 1


class FilterSpec(BaseModel):
    """Two cascaded median filters for baseline wander removal."""

    model_config = ConfigDict(frozen=True)

    window_1_ms: float = Field(default=200.0, gt=0)
    window_2_ms: float = Field(default=600.0, gt=0)
    edge_mode: Literal["replicate"] = "replicate"
    fs: int = SAMPLING_RATE

    @model_validator(mode="after")
    def _ordered(self) -> "FilterSpec":
        if self.window_1 >= self.window_2:
            raise ValueError(
                f"first median window ({self.window_1} samples) must be shorter than "
                f"the second ({self.window_2} samples)"
            )
        return self

    @property
    def window_1(self) -> int:
        return window_samples(self.window_1_ms, self.fs)

    @property
    def window_2(self) -> int:
        return window_samples(self.window_2_ms, self.fs)
