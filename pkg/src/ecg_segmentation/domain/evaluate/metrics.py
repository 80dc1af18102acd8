# SPDX-License-Identifier: MIT

"""Quality metrics of the delineation.

* ``Se = 100 * TP / (TP + FN)`` and ``PPV = 100 * TP / (TP + FP)``;
* ``m`` and ``sigma`` are the mean and population standard deviation of the
  signed timing error in ms;
* the patient score is the micro-averaged ``F = 2TP / (2TP + FP + FN)`` over
  the six point types pooled.

Undefined values (empty denominators, no matched points) are ``None``.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence

import numpy as np

from ..common.models import POINT_TYPES, PointType
from ..dataset.models import EcgRecord
from ..delineate.models import PredictedPoints
from .matching import match_points, tolerance_radius
from .models import EvaluationConfig, MatchResult, MetricsReport, PatientScore, PointMatch, PointMetrics


def _ratio(num: int, den: int) -> Optional[float]:
    return 100.0 * num / den if den else None


def point_metrics(match: PointMatch) -> PointMetrics:
    errors = np.asarray(match.errors_ms, dtype=np.float64)
    return PointMetrics(
        se=_ratio(match.tp, match.tp + match.fn),
        ppv=_ratio(match.tp, match.tp + match.fp),
        mean_ms=float(errors.mean()) if errors.size else None,
        sigma_ms=float(errors.std(ddof=0)) if errors.size else None,
        tp=match.tp,
        fp=match.fp,
        fn=match.fn,
    )


def compute_metrics(result: MatchResult) -> MetricsReport:
    """Se, PPV, m and sigma for every point type of ``result``."""
    rows = {point: point_metrics(result[point]) for point in POINT_TYPES}
    return MetricsReport(rows=rows)


def f_score(match: PointMatch) -> float:
    """``2TP / (2TP + FP + FN)``; a record with nothing to find and nothing found scores 1."""
    den = 2 * match.tp + match.fp + match.fn
    return 2.0 * match.tp / den if den else 1.0


def patient_f_score(patient_id: str, result: MatchResult) -> PatientScore:
    return PatientScore(patient_id=patient_id, f=f_score(result.pooled))


def reference_points(record: EcgRecord, lead: str, point: PointType) -> List[int]:
    waves = record.waves(lead, point.wave)
    return [w.onset if point.is_onset else w.offset for w in waves]


def evaluate_record(
    record: EcgRecord,
    predicted: PredictedPoints,
    lead: str,
    config: EvaluationConfig | None = None,
) -> MatchResult:
    """Match ``predicted`` against the expert annotation of ``lead``."""
    config = config or EvaluationConfig()
    radius = tolerance_radius(
        reference_points(record, lead, PointType.QRS_ONSET),
        record.sampling_rate,
        radius_ms=config.radius_ms,
        reference_bpm=config.reference_bpm,
    )
    entries = {
        point: match_points(
            reference_points(record, lead, point),
            predicted.of(point.wave, point.is_onset).tolist(),
            radius,
            record.sampling_rate,
            config.matching,
        )
        for point in POINT_TYPES
    }
    return MatchResult(entries=entries)


def reference_as_prediction(record: EcgRecord, lead: str) -> PredictedPoints:
    """The expert annotation of ``lead`` in predicted-points form."""
    onsets = {}
    offsets = {}
    for point in POINT_TYPES:
        table = onsets if point.is_onset else offsets
        table[point.wave] = np.asarray(reference_points(record, lead, point), dtype=np.int64)
    return PredictedPoints(onsets=onsets, offsets=offsets)


def _mean(values: Sequence[Optional[float]]) -> Optional[float]:
    present = [v for v in values if v is not None]
    return float(np.mean(present)) if present else None


def average_reports(reports: Iterable[MetricsReport]) -> MetricsReport:
    """Average Se/PPV/m/sigma of independently trained runs; counts are summed."""
    reports = list(reports)
    if not reports:
        raise ValueError("no reports to average")
    rows = {}
    for point in POINT_TYPES:
        items = [r[point] for r in reports]
        rows[point] = PointMetrics(
            se=_mean([i.se for i in items]),
            ppv=_mean([i.ppv for i in items]),
            mean_ms=_mean([i.mean_ms for i in items]),
            sigma_ms=_mean([i.sigma_ms for i in items]),
            tp=sum(i.tp for i in items),
            fp=sum(i.fp for i in items),
            fn=sum(i.fn for i in items),
        )
    return MetricsReport(rows=rows)
