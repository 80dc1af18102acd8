# SPDX-License-Identifier: MIT

"""Training exports: targets, window sampling and the training loop."""

from .models import TrainConfig, TrainProgress, TrainResult
from .targets import rasterize_labels, rasterize_targets
from .sampling import sample_window
from .trainer import batch_gradients, train_base

__all__ = [
    "TrainConfig",
    "TrainProgress",
    "TrainResult",
    "rasterize_labels",
    "rasterize_targets",
    "sample_window",
    "batch_gradients",
    "train_base",
]
