"""Unit tests for the adaptive tolerance and point matching."""

from itertools import permutations
from typing import Sequence, Tuple

import numpy as np
import pytest

from ecg_segmentation.domain.evaluate import match_points, tolerance_radius


def test_radius_shrinks_with_heart_rate() -> None:
    """75 BPM gives 150 * 70 / 75 = 140 ms; slower rhythms keep 150 ms."""
    assert tolerance_radius(list(range(100, 5000, 400))) == pytest.approx(140.0)
    assert tolerance_radius(list(range(0, 5000, 500))) == pytest.approx(150.0)
    assert tolerance_radius(list(range(0, 5000, 1000))) == pytest.approx(150.0)


def test_radius_without_heart_rate(caplog: pytest.LogCaptureFixture) -> None:
    assert tolerance_radius([250]) == 150.0
    assert tolerance_radius([]) == 150.0
    assert "Heart rate undefined" in caplog.text


def test_counts_and_signed_errors() -> None:
    """Errors are predicted minus reference, in ms, listed in reference order."""
    match = match_points([100, 200, 300], [205, 98, 900], radius_ms=20)
    assert (match.tp, match.fp, match.fn) == (2, 1, 1)
    assert match.errors_ms == [-4.0, 10.0]


def test_empty_inputs() -> None:
    assert match_points([], [], 150).tp == 0
    only_ref = match_points([10, 20], [], 150)
    assert (only_ref.tp, only_ref.fn, only_ref.fp) == (0, 2, 0)
    only_pred = match_points([], [10], 150)
    assert (only_pred.tp, only_pred.fn, only_pred.fp) == (0, 0, 1)


def test_greedy_loses_a_pair_that_optimal_finds() -> None:
    """Reference [10, 16], predicted [6, 12], 5-sample (10 ms) radius."""
    greedy = match_points([10, 16], [6, 12], radius_ms=10, strategy="greedy")
    optimal = match_points([10, 16], [6, 12], radius_ms=10, strategy="optimal")
    assert greedy.tp == 1
    assert optimal.tp == 2
    assert optimal.errors_ms == [-8.0, -8.0]


def test_unknown_strategy() -> None:
    with pytest.raises(ValueError):
        match_points([1], [1], 150, strategy="hungarian")  # type: ignore[arg-type]


def _brute_force(ref: Sequence[int], pred: Sequence[int], radius: int) -> Tuple[int, int]:
    """Most pairs within the radius, then the least total absolute error."""
    best = (0, 0)
    if len(ref) <= len(pred):
        options = [list(zip(range(len(ref)), p)) for p in permutations(range(len(pred)), len(ref))]
    else:
        options = [list(zip(p, range(len(pred)))) for p in permutations(range(len(ref)), len(pred))]
    for pairs in options:
        kept = [abs(ref[i] - pred[j]) for i, j in pairs if abs(ref[i] - pred[j]) <= radius]
        candidate = (len(kept), sum(kept))
        if candidate[0] > best[0] or (candidate[0] == best[0] and candidate[1] < best[1]):
            best = candidate
    return best


def test_optimal_matching_agrees_with_exhaustive_search() -> None:
    """Ten thousand random cases of up to five points per side."""
    rng = np.random.default_rng(42)
    for _ in range(10_000):
        ref = sorted(rng.integers(0, 60, size=rng.integers(0, 6)).tolist())
        pred = sorted(rng.integers(0, 60, size=rng.integers(0, 6)).tolist())
        match = match_points(ref, pred, radius_ms=20)  # 10 samples
        total = int(round(sum(abs(e) for e in match.errors_ms) / 2))
        assert (match.tp, total) == _brute_force(ref, pred, 10)
