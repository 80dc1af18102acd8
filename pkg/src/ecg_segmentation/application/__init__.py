# SPDX-License-Identifier: MIT

"""Application layer orchestrating domain workflows."""

from .dataset_preparation import DatasetPreparationService
from .model_training import ModelTrainingService
from .model_evaluation import EvaluationOutcome, ModelEvaluationService
from .ensemble_building import EnsembleBuildingService
from .report_generation import ReportGenerationService
from .pipeline import STAGES, Pipeline, PipelineError

__all__ = [
    "DatasetPreparationService",
    "ModelTrainingService",
    "EvaluationOutcome",
    "ModelEvaluationService",
    "EnsembleBuildingService",
    "ReportGenerationService",
    "STAGES",
    "Pipeline",
    "PipelineError",
]
