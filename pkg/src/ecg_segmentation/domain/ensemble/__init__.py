# SPDX-License-Identifier: MIT

"""Ensemble exports: builder, generalization probe and distillation report."""

from .models import (
    DistillationReport,
    DistillationRow,
    EnsembleConfig,
    EnsembleManifest,
    MemberEntry,
    ProbeEntry,
    SplitSummary,
    StageEntry,
)
from .builder import BuildResult, build_ensemble, patient_scorer, score_patients
from .analysis import categorize, distillation_report, generalization_probe

__all__ = [
    "DistillationReport",
    "DistillationRow",
    "EnsembleConfig",
    "EnsembleManifest",
    "MemberEntry",
    "ProbeEntry",
    "SplitSummary",
    "StageEntry",
    "BuildResult",
    "build_ensemble",
    "patient_scorer",
    "score_patients",
    "categorize",
    "distillation_report",
    "generalization_probe",
]
