# SPDX-License-Identifier: MIT

"""Evaluation exports: tolerance, matching and metrics."""

from .models import (
    EvaluationConfig,
    MatchResult,
    MetricsReport,
    PatientScore,
    PointMatch,
    PointMetrics,
)
from .matching import match_points, tolerance_radius
from .metrics import (
    average_reports,
    compute_metrics,
    evaluate_record,
    f_score,
    patient_f_score,
    point_metrics,
    reference_as_prediction,
    reference_points,
)

__all__ = [
    "EvaluationConfig",
    "MatchResult",
    "MetricsReport",
    "PatientScore",
    "PointMatch",
    "PointMetrics",
    "match_points",
    "tolerance_radius",
    "average_reports",
    "compute_metrics",
    "evaluate_record",
    "f_score",
    "patient_f_score",
    "point_metrics",
    "reference_as_prediction",
    "reference_points",
]
