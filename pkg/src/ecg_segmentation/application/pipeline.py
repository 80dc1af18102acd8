# SPDX-License-Identifier: MIT

"""Resumable end-to-end pipeline.

Stages run in a fixed order::

    preprocess -> split -> train -> evaluate -> ensemble -> report

Every stage leaves its artifacts under ``output_dir``; a later stage loads
what it needs from disk when an earlier stage was not run in the same
process.  Stages whose artifacts already exist are skipped unless forced,
so an interrupted run continues where it stopped.
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..config.constants import REFERENCE_PARAM_COUNT
from ..config.settings import Settings, settings
from ..domain.dataset.models import DatasetSplit, EcgRecord
from ..domain.ensemble.models import EnsembleManifest
from ..domain.evaluate.metrics import average_reports
from ..domain.nnet.models import ModelParams
from ..infrastructure.persistence.repositories import FileRepository, ReportRepository
from .dataset_preparation import DatasetPreparationService
from .ensemble_building import EnsembleBuildingService
from .model_evaluation import EvaluationOutcome, ModelEvaluationService
from .model_training import ModelTrainingService
from .report_generation import ReportGenerationService

logger = logging.getLogger(__name__)

STAGES: Tuple[str, ...] = ("preprocess", "split", "train", "evaluate", "ensemble", "report")


class PipelineError(Exception):
    """A pipeline stage failed; ``stage`` names it."""

    def __init__(self, stage: str, cause: BaseException) -> None:
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}' failed: {cause}")


class Pipeline:
    """Run pipeline stages over one dataset and output directory."""

    def __init__(self, cfg: Settings | None = None, *, export_probs: bool = False) -> None:
        self.cfg = cfg or settings
        self.export_probs = export_probs
        self.cfg.output_dir.mkdir(parents=True, exist_ok=True)
        self.reports = ReportRepository(self.cfg.output_dir)
        self.files = FileRepository(self.cfg.output_dir)
        self.dataset = DatasetPreparationService(self.cfg)
        self.training = ModelTrainingService(self.cfg, self.reports)
        self.evaluation = ModelEvaluationService(self.cfg, self.reports)
        self.ensembles = EnsembleBuildingService(self.cfg, self.training, self.reports, self.files)
        self.reporting = ReportGenerationService(self.cfg, self.reports, self.files)

        self._seed: Optional[int] = None
        self._records: Optional[List[EcgRecord]] = None
        self._split: Optional[DatasetSplit] = None
        self._base: Optional[List[ModelParams]] = None
        self._base_outcome: Optional[EvaluationOutcome] = None
        self._ensemble: Optional[Tuple[EnsembleManifest, List[ModelParams]]] = None

    # -- lazily loaded state ------------------------------------------------

    @property
    def seed(self) -> int:
        if self._seed is None:
            self._seed = self.cfg.effective_seed(self.dataset.manifest_seed())
        return self._seed

    @property
    def records(self) -> List[EcgRecord]:
        if self._records is None:
            self._records = self.dataset.load_preprocessed()
        return self._records

    @property
    def split(self) -> DatasetSplit:
        if self._split is None:
            self._split = self.dataset.load_split()
        return self._split

    def _subset(self, ids: Sequence[str]) -> List[EcgRecord]:
        wanted = set(ids)
        return [r for r in self.records if r.patient_id in wanted]

    @property
    def base_models(self) -> List[ModelParams]:
        if self._base is None:
            self._base = self.training.load_base_runs()
        return self._base

    @property
    def base_outcome(self) -> EvaluationOutcome:
        if self._base_outcome is None:
            self._base_outcome = self.evaluation.evaluate(self.base_models[0], self.records, self.split)
        return self._base_outcome

    @property
    def ensemble(self) -> Tuple[EnsembleManifest, List[ModelParams]]:
        if self._ensemble is None:
            self._ensemble = self.ensembles.load()
        return self._ensemble

    # -- stages -------------------------------------------------------------

    def _done(self, stage: str) -> bool:
        if stage == "preprocess":
            return (self.dataset.preprocessed_dir / "manifest.json").exists()
        if stage == "split":
            return (self.cfg.output_dir / "split.json").exists()
        if stage == "train":
            return all(self.training.base_checkpoint(r).exists() for r in range(self.cfg.base_runs))
        if stage == "ensemble":
            return self.files.exists("ensemble_manifest") and self.reports.exists("scattergram")
        return False

    def stage_preprocess(self) -> None:
        _, raw = self.dataset.load_raw()
        self._records = self.dataset.preprocess(raw)

    def stage_split(self) -> None:
        self._split = self.dataset.split([r.patient_id for r in self.records], self.seed)

    def stage_train(self) -> None:
        results = self.training.train_base_runs(self._subset(self.split.train_ids), self.seed)
        self._base = [r.model for r in results]

    def stage_evaluate(self) -> None:
        self._base_outcome = None
        self.evaluation.write_reports("base", self.base_outcome, self.split)
        if len(self.base_models) > 1:
            runs = [self.base_outcome.metrics(self.split.test_ids)]
            for model in self.base_models[1:]:
                outcome = self.evaluation.evaluate(model, self._subset(self.split.test_ids), self.split)
                runs.append(outcome.metrics(self.split.test_ids))
            self.reports.save_metrics("metrics_base_mean", average_reports(runs))
        self.write_run_info()

    def stage_ensemble(self) -> None:
        train = self._subset(self.split.train_ids)
        if self.files.exists("ensemble_manifest"):
            manifest, models = self.ensemble
            logger.warning("Reusing existing ensemble with %d members", len(models), extra={"stage": "ensemble"})
        else:
            manifest, models = self.ensembles.build(train, self.base_models[0], self.seed)
            self._ensemble = (manifest, models)
        outcome = self.evaluation.evaluate(models, self.records, self.split)
        self.evaluation.write_reports("ensemble", outcome, self.split)
        self.ensembles.probe(manifest, models, train)
        self.ensembles.distill(self.base_outcome, outcome, self.split)

    def stage_report(self) -> None:
        if self.export_probs:
            self.evaluation.export_predictions(self.base_models[0], self.records, name="base", with_probs=True)
            if self.files.exists("ensemble_manifest"):
                self.evaluation.export_predictions(
                    self.ensemble[1], self.records, name="ensemble", with_probs=True
                )
        self.reporting.generate()

    def write_run_info(self) -> None:
        self.files.save(
            "run_info",
            {
                "seed": self.seed,
                "lead": self.cfg.lead,
                "annotation": "lead-specific",
                "min_run": self.cfg.min_run,
                "matching": self.cfg.matching,
                "f_averaging": "micro",
                "radius_ms": self.cfg.radius_ms,
                "reference_bpm": self.cfg.reference_bpm,
                "base_runs": self.cfg.base_runs,
                "param_count": self.base_models[0].param_count,
                "reference_param_count": REFERENCE_PARAM_COUNT,
                "architecture": self.base_models[0].describe(),
            },
        )

    # -- driver -------------------------------------------------------------

    def run(
        self,
        stages: Sequence[str] | None = None,
        *,
        start: str | None = None,
        force: bool = False,
    ) -> List[str]:
        """Run ``stages`` (default: all, or all from ``start`` on) in pipeline order.

        Raises
        ------
        PipelineError
            Wrapping the first failure; ``stage`` names the failing stage.
        """
        if start is not None and start not in STAGES:
            raise ValueError(f"unknown stage '{start}', expected one of {', '.join(STAGES)}")
        selected = list(stages) if stages is not None else list(STAGES[STAGES.index(start or STAGES[0]):])
        unknown = [s for s in selected if s not in STAGES]
        if unknown:
            raise ValueError(f"unknown stage(s): {', '.join(unknown)}")
        explicit = stages is not None or start is not None

        actions: Dict[str, Callable[[], None]] = {
            "preprocess": self.stage_preprocess,
            "split": self.stage_split,
            "train": self.stage_train,
            "evaluate": self.stage_evaluate,
            "ensemble": self.stage_ensemble,
            "report": self.stage_report,
        }
        completed: List[str] = []
        for stage in STAGES:
            if stage not in selected:
                continue
            # stages asked for by name always run; the default sweep resumes
            if not force and not explicit and self._done(stage):
                logger.warning("Skipping stage %s, artifacts exist", stage, extra={"stage": stage})
                completed.append(stage)
                continue
            logger.info("Running stage %s", stage, extra={"stage": stage})
            try:
                actions[stage]()
            except Exception as exc:
                logger.error("Stage %s failed: %s", stage, exc, extra={"stage": stage})
                raise PipelineError(stage, exc) from exc
            completed.append(stage)
        return completed
