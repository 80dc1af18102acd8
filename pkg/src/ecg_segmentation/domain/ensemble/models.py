# SPDX-License-Identifier: MIT

"""Ensemble domain models."""

from __future__ import annotations

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..common.models import SplitTag

StopReason = Literal["exhausted", "stagnation", "iteration_cap"]
Category = Literal["distilled", "outlier", "stable"]


class EnsembleConfig(BaseModel):
    """Constants of the error-correcting ensemble builder."""

    screen_threshold: float = Field(0.99, ge=0.0, le=1.0, description="F at which a patient is removed")
    stagnation_retries: int = Field(5, ge=0, description="Re-trainings allowed for a non-shrinking subset")
    iteration_cap: int = Field(50, ge=1, description="Total training attempts allowed")
    outlier_threshold: float = Field(0.9, ge=0.0, le=1.0, description="F below which a patient is an outlier")


class MemberEntry(BaseModel):
    """One accepted ensemble member."""

    index: int = Field(..., ge=0, description="Position in the ensemble")
    iteration: int = Field(..., ge=1)
    retrains: int = Field(0, ge=0, description="Re-trainings before the member was accepted")
    seed: int
    subset: List[str] = Field(..., description="Patients the member was trained on")
    removed: List[str] = Field(default_factory=list, description="Subset patients screened out by it")
    checkpoint: Optional[str] = None


class StageEntry(BaseModel):
    iteration: int
    subset_size: int
    retrains: int


class EnsembleManifest(BaseModel):
    """Everything the builder did: members, stage history and leftovers.

    ``history`` lists the subset size before the first iteration and after
    every accepted one.
    """

    config: EnsembleConfig
    seed: int
    members: List[MemberEntry] = Field(default_factory=list)
    stages: List[StageEntry] = Field(default_factory=list)
    history: List[int] = Field(default_factory=list)
    irreducible: List[str] = Field(default_factory=list)
    attempts: int = 0
    stop_reason: StopReason = "exhausted"

    @model_validator(mode="after")
    def _nested(self) -> "EnsembleManifest":
        if any(b > a for a, b in zip(self.history, self.history[1:])):
            raise ValueError(f"subset history must be non-increasing: {self.history}")
        for prev, member in zip(self.members, self.members[1:]):
            if not set(member.subset) <= set(prev.subset):
                raise ValueError(f"member {member.index} subset is not within member {prev.index}'s")
        return self

    @property
    def train_ids(self) -> List[str]:
        return list(self.members[0].subset) if self.members else []


class ProbeEntry(BaseModel):
    """Screened patients of one member on its own subset and on the unseen rest."""

    member: int
    own_size: int
    own_good: int
    unseen_size: int
    unseen_good: Optional[int] = None
    probed: bool = True
    notice: str = ""


class DistillationRow(BaseModel):
    patient_id: str
    split: SplitTag
    f_base: float = Field(..., ge=0.0, le=1.0)
    f_ensemble: float = Field(..., ge=0.0, le=1.0)
    category: Category = "stable"


class SplitSummary(BaseModel):
    """Overall F of both models and per-category counts for one split."""

    split: SplitTag
    patients: int
    f_base: float
    f_ensemble: float
    outliers_base: int
    outliers_ensemble: int
    categories: Dict[str, int] = Field(default_factory=dict)


class DistillationReport(BaseModel):
    rows: List[DistillationRow] = Field(default_factory=list)
    summary: List[SplitSummary] = Field(default_factory=list)
    screen_threshold: float = 0.99
    outlier_threshold: float = 0.9

    def for_split(self, split: SplitTag) -> Optional[SplitSummary]:
        return next((s for s in self.summary if s.split == split), None)
