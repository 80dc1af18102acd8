# SPDX-License-Identifier: MIT

"""Evaluation domain models."""

from __future__ import annotations

from typing import Dict, Iterable, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from ..common.models import POINT_TYPES, PointType, SplitTag

MatchingStrategy = Literal["optimal", "greedy"]


class EvaluationConfig(BaseModel):
    """Constants of the adaptive-tolerance evaluator."""

    radius_ms: float = Field(150.0, gt=0, description="Tolerance radius at the reference heart rate")
    reference_bpm: float = Field(70.0, gt=0, description="Heart rate at which radius_ms applies")
    matching: MatchingStrategy = Field("optimal", description="Point matching strategy")
    min_run: int = Field(10, ge=1, description="Shortest wave run, in samples, that yields points")


class PointMatch(BaseModel):
    """Matching outcome of one point type."""

    tp: int = Field(0, ge=0)
    fp: int = Field(0, ge=0)
    fn: int = Field(0, ge=0)
    errors_ms: List[float] = Field(default_factory=list, description="predicted - reference, ms")

    @model_validator(mode="after")
    def _errors_per_hit(self) -> "PointMatch":
        if len(self.errors_ms) != self.tp:
            raise ValueError(f"{len(self.errors_ms)} errors recorded for {self.tp} true positives")
        return self

    def __add__(self, other: "PointMatch") -> "PointMatch":
        return PointMatch(
            tp=self.tp + other.tp,
            fp=self.fp + other.fp,
            fn=self.fn + other.fn,
            errors_ms=self.errors_ms + other.errors_ms,
        )


def _empty_entries() -> Dict[PointType, PointMatch]:
    return {point: PointMatch() for point in POINT_TYPES}


class MatchResult(BaseModel):
    """Per point type counts and timing errors of one or more records."""

    entries: Dict[PointType, PointMatch] = Field(default_factory=_empty_entries)

    def __getitem__(self, point: PointType) -> PointMatch:
        return self.entries.get(point, PointMatch())

    @property
    def pooled(self) -> PointMatch:
        total = PointMatch()
        for point in POINT_TYPES:
            total = total + self[point]
        return total

    @classmethod
    def merge(cls, results: Iterable["MatchResult"]) -> "MatchResult":
        """Pool the counts and errors of several results."""
        merged = _empty_entries()
        for result in results:
            for point in POINT_TYPES:
                merged[point] = merged[point] + result[point]
        return cls(entries=merged)


class PointMetrics(BaseModel):
    """Quality row of one point type.  ``None`` marks an undefined value."""

    se: Optional[float] = Field(None, ge=0, le=100, description="Sensitivity, %")
    ppv: Optional[float] = Field(None, ge=0, le=100, description="Positive predictive value, %")
    mean_ms: Optional[float] = Field(None, description="Mean signed error, ms")
    sigma_ms: Optional[float] = Field(None, ge=0, description="Population std of the error, ms")
    tp: int = 0
    fp: int = 0
    fn: int = 0


class MetricsReport(BaseModel):
    """Se/PPV/m/sigma per point type."""

    rows: Dict[PointType, PointMetrics]

    @property
    def pooled_counts(self) -> Tuple[int, int, int]:
        """TP, FP and FN summed over the point types."""
        return (
            sum(r.tp for r in self.rows.values()),
            sum(r.fp for r in self.rows.values()),
            sum(r.fn for r in self.rows.values()),
        )

    def __getitem__(self, point: PointType) -> PointMetrics:
        return self.rows[point]


class PatientScore(BaseModel):
    """Micro-averaged F1 of one patient over the six point types."""

    patient_id: str
    f: float = Field(..., ge=0.0, le=1.0)
    split: Optional[SplitTag] = None
