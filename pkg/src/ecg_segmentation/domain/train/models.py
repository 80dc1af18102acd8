# SPDX-License-Identifier: MIT

"""Training domain models."""

from __future__ import annotations

import math
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ...config.constants import DEFAULT_LEAD, RECORD_LENGTH, SAMPLING_RATE
from ..nnet.models import ArchitectureSpec, ModelParams, OptimizerState


class TrainConfig(BaseModel):
    """Hyper-parameters of one base-network training run."""

    model_config = ConfigDict(frozen=True)

    lead: str = DEFAULT_LEAD
    window_seconds: float = Field(default=6.0, gt=0)
    batch_size: int = Field(default=8, ge=1)
    epochs: int = Field(default=50, ge=1)
    steps_per_epoch: Optional[int] = Field(default=None, ge=1)
    seed: int = Field(default=0, ge=0)
    learning_rate: float = Field(default=0.001, ge=0)
    rho: float = Field(default=0.9, ge=0, lt=1)
    eps: float = Field(default=1e-8, gt=0)
    precision: Literal["float64", "float32"] = "float64"
    architecture: ArchitectureSpec = Field(default_factory=ArchitectureSpec)
    checkpoint_path: Optional[Path] = None
    threads: int = Field(default=1, ge=1)
    deterministic: bool = False

    @model_validator(mode="after")
    def _window_fits(self) -> "TrainConfig":
        if self.window_samples > RECORD_LENGTH:
            raise ValueError(
                f"window of {self.window_seconds} s exceeds the {RECORD_LENGTH}-sample record"
            )
        return self

    @property
    def window_samples(self) -> int:
        return int(round(self.window_seconds * SAMPLING_RATE))

    def resolved_steps(self, n_records: int) -> int:
        """Steps per epoch; defaults to ``ceil(n / batch) * 4``."""
        if self.steps_per_epoch is not None:
            return self.steps_per_epoch
        return math.ceil(n_records / self.batch_size) * 4


class TrainProgress(BaseModel):
    """Model and optimizer after the last finished epoch.

    Handing it back to :func:`train_base` continues the run; windows are
    drawn per epoch, so a resumed run matches an uninterrupted one bit for bit.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    model: ModelParams
    state: OptimizerState
    epoch_losses: List[float]
    initial_loss: float

    @property
    def epochs_done(self) -> int:
        return len(self.epoch_losses)


class TrainResult(BaseModel):
    """Outcome of :func:`train_base`.

    ``epoch_losses`` covers the whole run, ``step_losses`` only the steps taken
    by the call that produced it.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    model: ModelParams
    state: OptimizerState
    config: TrainConfig
    epoch_losses: List[float]
    step_losses: List[float]
    initial_loss: float

    @property
    def final_loss(self) -> float:
        return self.epoch_losses[-1]
