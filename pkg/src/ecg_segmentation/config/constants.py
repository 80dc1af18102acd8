# SPDX-License-Identifier: MIT

"""Constants shared across domains.

Recording geometry of the twelve-lead dataset, channel ordering of the
segmentation network and the reference quality figures reproduction runs are
compared against.
"""

from typing import Dict, Tuple

SAMPLING_RATE: int = 500  # Hz
RECORD_SECONDS: int = 10
RECORD_LENGTH: int = SAMPLING_RATE * RECORD_SECONDS

# Standard lead order; names are lower case throughout the toolkit.
LEAD_NAMES: Tuple[str, ...] = (
    "i", "ii", "iii", "avr", "avl", "avf",
    "v1", "v2", "v3", "v4", "v5", "v6",
)
DEFAULT_LEAD: str = "ii"

# Network output channels.  The order is also the winner-mask tie-break order.
CHANNEL_NAMES: Tuple[str, ...] = ("p", "qrs", "t", "background")
BACKGROUND_CHANNEL: int = 3

# Overlap precedence when expert intervals of different types collide.
RASTER_PRECEDENCE: Tuple[str, ...] = ("qrs", "p", "t")

DATASET_PATIENTS: int = 200
SPLIT_TRAIN_SIZE: int = 134
SPLIT_TEST_SIZE: int = 66

# Trainable parameter count reported for the published network.
REFERENCE_PARAM_COUNT: int = 60_804

# Base network quality averaged over 20 runs: (Se %, PPV %, m ms, sigma ms).
REFERENCE_BASE_METRICS: Dict[str, Tuple[float, float, float, float]] = {
    "p_onset": (95.20, 82.66, 2.7, 21.9),
    "p_offset": (95.39, 82.59, -7.4, 28.6),
    "qrs_onset": (99.51, 98.17, 2.6, 12.4),
    "qrs_offset": (99.50, 97.96, -1.7, 14.1),
    "t_onset": (97.95, 94.81, 8.4, 28.2),
    "t_offset": (97.56, 94.96, -3.1, 28.2),
}
REFERENCE_BASE_F: float = 0.94
REFERENCE_ENSEMBLE_F: float = 0.95
