"""Unit tests for the median filters and baseline removal."""

import numpy as np
import pytest

from ecg_segmentation.domain.common.exceptions import DataValidationError
from ecg_segmentation.domain.dataset.models import EcgRecord
from ecg_segmentation.domain.preprocess import (
    FilterSpec,
    median_filter,
    preprocess_record,
    remove_baseline,
    window_samples,
)


def test_window_lengths_at_500_hz() -> None:
    assert window_samples(200) == 101
    assert window_samples(600) == 301
    spec = FilterSpec()
    assert (spec.window_1, spec.window_2) == (101, 301)


def test_median_filter_replicates_edges() -> None:
    """Edge samples are repeated (window - 1) / 2 times on each side."""
    out = median_filter([5.0, 1.0, 9.0, 2.0, 7.0], 3)
    assert out.tolist() == [5.0, 5.0, 2.0, 7.0, 7.0]


def test_median_filter_output_values_come_from_input() -> None:
    x = np.random.default_rng(0).normal(size=500)
    out = median_filter(x, 51)
    assert out.shape == x.shape
    assert np.isin(out, x).all()


@pytest.mark.parametrize("window", [0, 4, 11])
def test_median_filter_rejects_bad_windows(window: int) -> None:
    with pytest.raises(DataValidationError):
        median_filter(np.zeros(10), window)


def test_linear_drift_is_removed_exactly() -> None:
    """The running median of a ramp is the ramp itself, so nothing is left."""
    drift = 0.001 * np.arange(5000, dtype=np.float64)
    assert np.array_equal(remove_baseline(drift), np.zeros(5000))


def test_short_signal_is_rejected() -> None:
    with pytest.raises(DataValidationError, match="shorter"):
        remove_baseline(np.zeros(200))


def test_preprocess_record_keeps_annotation(synthetic_record: EcgRecord) -> None:
    out = preprocess_record(synthetic_record)
    assert out.annotations == synthetic_record.annotations
    assert set(out.leads) == set(synthetic_record.leads)
    # the slow sinusoid is gone: the corrected lead is centred near zero
    assert abs(float(np.median(out.leads["ii"]))) < 0.05


def test_threaded_preprocessing_is_identical(synthetic_record: EcgRecord) -> None:
    serial = preprocess_record(synthetic_record)
    threaded = preprocess_record(synthetic_record, threads=3)
    assert serial.same_as(threaded)


def test_constant_signal_becomes_zero() -> None:
    assert np.array_equal(remove_baseline(np.full(5000, 3.7)), np.zeros(5000))


def test_narrow_spike_survives_on_a_ramp() -> None:
    x = 0.001 * np.arange(5000, dtype=np.float64)
    x[2500] += 5.0
    out = remove_baseline(x)
    assert out[2500] == pytest.approx(5.0, abs=0.01)
    far = np.r_[0:2250, 2750:5000]
    assert np.abs(out[far]).max() < 1e-9


def test_windows_are_ordered_by_sample_count() -> None:
    """200 ms and 201 ms both round to 101 samples at 500 Hz."""
    with pytest.raises(ValueError, match="101 samples"):
        FilterSpec(window_1_ms=200.0, window_2_ms=201.0)
    assert FilterSpec(window_1_ms=200.0, window_2_ms=204.0).window_2 == 103


@pytest.mark.parametrize(
    "signal, expected",
    [
        ([1.0, 2.0, 3.0, 4.0, 5.0], [1.0, 2.0, 3.0, 4.0, 5.0]),
        ([0.0, 0.0, 10.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0, 0.0]),
    ],
)
def test_median_filter_of_three(signal: list, expected: list) -> None:
    assert median_filter(signal, 3).tolist() == expected


def test_amplitude_shift_leaves_output_unchanged() -> None:
    x = np.random.default_rng(1).normal(size=5000).cumsum() * 0.01
    assert np.allclose(remove_baseline(x + 2.5), remove_baseline(x), rtol=0, atol=1e-12)
