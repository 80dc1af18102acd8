"""Unit tests for quality metrics and the patient F-score."""

from typing import Callable

import numpy as np
import pytest

from ecg_segmentation.domain.common.models import POINT_TYPES, PointType, WaveType
from ecg_segmentation.domain.dataset.models import EcgRecord
from ecg_segmentation.domain.delineate.models import PredictedPoints
from ecg_segmentation.domain.evaluate import (
    EvaluationConfig,
    MatchResult,
    MetricsReport,
    PointMatch,
    PointMetrics,
    average_reports,
    compute_metrics,
    evaluate_record,
    f_score,
    patient_f_score,
    point_metrics,
    reference_as_prediction,
)


def test_point_metrics_definitions() -> None:
    m = point_metrics(PointMatch(tp=3, fp=1, fn=1, errors_ms=[2.0, 4.0, 6.0]))
    assert m.se == pytest.approx(75.0)
    assert m.ppv == pytest.approx(75.0)
    assert m.mean_ms == pytest.approx(4.0)
    assert m.sigma_ms == pytest.approx(np.sqrt(8.0 / 3.0))  # population deviation


def test_undefined_metrics_are_none() -> None:
    m = point_metrics(PointMatch(fp=2))
    assert m.se is None
    assert m.ppv == 0.0
    assert m.mean_ms is None
    assert m.sigma_ms is None


def test_errors_must_match_true_positives() -> None:
    with pytest.raises(ValueError):
        PointMatch(tp=2, errors_ms=[1.0])


def test_micro_f_score() -> None:
    assert f_score(PointMatch(tp=3, fp=1, fn=2, errors_ms=[0.0] * 3)) == pytest.approx(6 / 9)
    assert f_score(PointMatch(fp=4)) == 0.0
    assert f_score(PointMatch()) == 1.0


def test_patient_score_pools_point_types() -> None:
    """Counts are summed over point types before the F-score is taken."""
    result = MatchResult(
        entries={
            PointType.P_ONSET: PointMatch(tp=1, fn=1, errors_ms=[0.0]),
            PointType.T_OFFSET: PointMatch(tp=3, fp=1, errors_ms=[0.0] * 3),
        }
    )
    assert patient_f_score("7", result).f == pytest.approx(8 / 10)


def test_merge_sums_counts_and_errors() -> None:
    a = MatchResult(entries={PointType.QRS_ONSET: PointMatch(tp=1, errors_ms=[2.0])})
    b = MatchResult(entries={PointType.QRS_ONSET: PointMatch(tp=1, fp=1, errors_ms=[-2.0])})
    merged = MatchResult.merge([a, b])
    assert merged[PointType.QRS_ONSET].errors_ms == [2.0, -2.0]
    assert merged.pooled.fp == 1
    report = compute_metrics(merged)
    assert report[PointType.QRS_ONSET].mean_ms == 0.0
    assert report.pooled_counts == (2, 1, 0)


def test_reference_scores_perfectly(synthetic_record: EcgRecord) -> None:
    predicted = reference_as_prediction(synthetic_record, "ii")
    result = evaluate_record(synthetic_record, predicted, "ii")
    assert patient_f_score(synthetic_record.patient_id, result).f == 1.0
    report = compute_metrics(result)
    for point in POINT_TYPES:
        assert report[point].se == 100.0
        assert report[point].mean_ms == 0.0


def test_shifted_prediction_is_within_tolerance(
    record_factory: Callable[..., EcgRecord],
) -> None:
    """Shifting every predicted point by 10 samples gives a +20 ms error."""
    record = record_factory()
    reference = reference_as_prediction(record, "ii")
    shifted = PredictedPoints(
        onsets={w: reference.of(w, True) + 10 for w in WaveType},
        offsets={w: reference.of(w, False) + 10 for w in WaveType},
    )
    result = evaluate_record(record, shifted, "ii", EvaluationConfig(matching="greedy"))
    report = compute_metrics(result)
    assert report[PointType.T_ONSET].mean_ms == pytest.approx(20.0)
    assert report[PointType.T_ONSET].sigma_ms == pytest.approx(0.0)


def test_average_reports_skips_undefined_values() -> None:
    full = PointMetrics(se=90.0, ppv=80.0, mean_ms=2.0, sigma_ms=10.0, tp=9, fp=2, fn=1)
    partial = PointMetrics(se=70.0, fn=3)
    defined = {p: full for p in POINT_TYPES}
    undefined = {p: partial for p in POINT_TYPES}
    mean = average_reports([MetricsReport(rows=defined), MetricsReport(rows=undefined)])
    row = mean[PointType.P_OFFSET]
    assert row.se == pytest.approx(80.0)
    assert row.ppv == pytest.approx(80.0)
    assert row.mean_ms == pytest.approx(2.0)
    assert (row.tp, row.fp, row.fn) == (9, 2, 4)
    with pytest.raises(ValueError):
        average_reports([])
