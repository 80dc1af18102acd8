"""Unit tests for sanitisation utilities."""

from enum import Enum
from pathlib import Path

import numpy as np

from ecg_segmentation.domain.common.models import PointType
from ecg_segmentation.domain.evaluate.models import PointMatch
from ecg_segmentation.utils.sanitization import sanitize_number, to_serializable


def test_sanitize_number_with_nan_and_inf() -> None:
    assert sanitize_number(np.nan) is None
    assert sanitize_number(np.inf) is None
    assert sanitize_number(-np.inf) is None
    assert sanitize_number(123.45) == 123.45
    assert sanitize_number("abc") is None
    assert sanitize_number(None) is None
    assert sanitize_number(np.float32(0.5)) == 0.5


def test_to_serializable_converts_nested_structures() -> None:
    data = {
        "numbers": [1, np.nan, 2],
        "array": np.array([1.5, 2.5]),
        "nested": {"x": np.float64(1.23), "n": np.int64(4)},
        "point": PointType.QRS_ONSET,
        "path": Path("runs/a"),
    }
    serialised = to_serializable(data)
    assert serialised["numbers"][1] is None
    assert serialised["array"] == [1.5, 2.5]
    assert serialised["nested"] == {"x": 1.23, "n": 4}
    assert serialised["point"] == "qrs_onset"
    assert serialised["path"] == "runs/a"


def test_to_serializable_handles_models_and_enum_keys() -> None:
    class Colour(Enum):
        RED = "red"

    out = to_serializable({Colour.RED: PointMatch(tp=1, errors_ms=[np.float64(2.0)])})
    assert out == {"red": {"tp": 1, "fp": 0, "fn": 0, "errors_ms": [2.0]}}
