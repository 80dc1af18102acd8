# SPDX-License-Identifier: MIT

"""Random training windows."""

from __future__ import annotations

import numpy as np

from ...config.constants import RECORD_LENGTH
from ..common.exceptions import DataValidationError


def sample_window(
    length: int = RECORD_LENGTH, window: int = 3000, rng: np.random.Generator | None = None
) -> int:
    """Uniform start index in ``[0, length - window]``."""
    if window < 1 or window > length:
        raise DataValidationError(f"window of {window} samples does not fit a {length}-sample record")
    rng = rng if rng is not None else np.random.default_rng()
    return int(rng.integers(0, length - window + 1))
