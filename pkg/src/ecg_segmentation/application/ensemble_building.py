# SPDX-License-Identifier: MIT

"""Service building and analysing the error-correcting ensemble."""

from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

from ..config.settings import Settings, settings
from ..domain.common.exceptions import DataNotAvailableError
from ..domain.dataset.models import DatasetSplit, EcgRecord
from ..domain.ensemble.analysis import distillation_report, generalization_probe
from ..domain.ensemble.builder import build_ensemble, patient_scorer
from ..domain.ensemble.models import DistillationReport, EnsembleManifest, MemberEntry, ProbeEntry
from ..domain.nnet.models import ModelParams
from ..infrastructure.persistence.repositories import FileRepository, ReportRepository
from .model_evaluation import EvaluationOutcome
from .model_training import ModelTrainingService

logger = logging.getLogger(__name__)

MANIFEST_KEY = "ensemble_manifest"


class EnsembleBuildingService:
    """Build the ensemble from the base network and report on it."""

    def __init__(
        self,
        cfg: Settings | None = None,
        training: ModelTrainingService | None = None,
        reports: ReportRepository | None = None,
        files: FileRepository | None = None,
    ) -> None:
        self.cfg = cfg or settings
        self.training = training or ModelTrainingService(self.cfg)
        self.reports = reports or ReportRepository(self.cfg.output_dir)
        self.files = files or FileRepository(self.cfg.output_dir)

    def build(
        self, records: Sequence[EcgRecord], base_model: ModelParams, seed: int
    ) -> Tuple[EnsembleManifest, List[ModelParams]]:
        """Run the builder on the training records, base network first."""
        steps = self.cfg.default_steps_per_epoch(len(records))

        def train_member(subset: Sequence[EcgRecord], member_seed: int) -> ModelParams:
            return self.training.train_member(subset, member_seed, steps_per_epoch=steps)

        def save_member(entry: MemberEntry, model: ModelParams) -> str:
            path = self.training.save_member(
                entry.index,
                model,
                {"seed": entry.seed, "iteration": entry.iteration, "subset_size": len(entry.subset)},
            )
            return str(path.relative_to(self.cfg.output_dir))

        result = build_ensemble(
            records,
            self.cfg.ensemble_config(),
            train_member,
            patient_scorer(self.cfg.lead, self.cfg.evaluation_config()),
            seed=seed,
            initial_member=base_model,
            on_member=save_member,
            threads=self.cfg.threads,
        )
        self.files.save(MANIFEST_KEY, result.manifest)
        self.reports.save_stage_history("stage_history", result.manifest.stages)
        return result.manifest, result.models

    def load(self) -> Tuple[EnsembleManifest, List[ModelParams]]:
        payload = self.files.load(MANIFEST_KEY)
        if payload is None:
            raise DataNotAvailableError(f"no ensemble manifest in {self.cfg.output_dir}")
        manifest = EnsembleManifest.model_validate(payload)
        models = [self.training.load_member(self.cfg.output_dir / str(m.checkpoint)) for m in manifest.members]
        return manifest, models

    def probe(
        self, manifest: EnsembleManifest, models: Sequence[ModelParams], records: Sequence[EcgRecord]
    ) -> List[ProbeEntry]:
        entries = generalization_probe(
            manifest,
            models,
            records,
            patient_scorer(self.cfg.lead, self.cfg.evaluation_config()),
            threads=self.cfg.threads,
        )
        self.reports.save_probe("probe", entries)
        return entries

    def distill(
        self, base: EvaluationOutcome, ensemble: EvaluationOutcome, split: DatasetSplit
    ) -> DistillationReport:
        report = distillation_report(base.results, ensemble.results, split, self.cfg.ensemble_config())
        self.reports.save_distillation("scattergram", report)
        for summary in report.summary:
            logger.info(
                "%s split: overall F base %.4f, ensemble %.4f, outliers %d -> %d",
                summary.split.value,
                summary.f_base,
                summary.f_ensemble,
                summary.outliers_base,
                summary.outliers_ensemble,
                extra={"split": summary.split.value},
            )
        return report
