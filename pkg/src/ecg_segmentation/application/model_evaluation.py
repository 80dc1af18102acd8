# SPDX-License-Identifier: MIT

"""Service scoring networks and ensembles against the expert annotation."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Sequence

from pydantic import BaseModel, Field

from ..config.settings import Settings, settings
from ..domain.dataset.models import DatasetSplit, EcgRecord
from ..domain.delineate.decoding import ModelOrEnsemble, infer, points_to_annotations
from ..domain.evaluate.metrics import compute_metrics, evaluate_record, patient_f_score
from ..domain.evaluate.models import MatchResult, MetricsReport, PatientScore
from ..infrastructure.persistence.repositories import ReportRepository

logger = logging.getLogger(__name__)


class EvaluationOutcome(BaseModel):
    """Per-patient match results of one model over a set of records."""

    results: Dict[str, MatchResult] = Field(default_factory=dict)
    scores: List[PatientScore] = Field(default_factory=list)

    def metrics(self, patient_ids: Sequence[str] | None = None) -> MetricsReport:
        ids = list(self.results) if patient_ids is None else [p for p in patient_ids if p in self.results]
        return compute_metrics(MatchResult.merge(self.results[p] for p in ids))


class ModelEvaluationService:
    """Infer, match and score; writes the metrics and per-patient CSVs."""

    def __init__(self, cfg: Settings | None = None, reports: ReportRepository | None = None) -> None:
        self.cfg = cfg or settings
        self.reports = reports or ReportRepository(self.cfg.output_dir)

    def evaluate(
        self, model: ModelOrEnsemble, records: Sequence[EcgRecord], split: DatasetSplit | None = None
    ) -> EvaluationOutcome:
        config = self.cfg.evaluation_config()
        lead = self.cfg.lead

        def one(record: EcgRecord) -> MatchResult:
            result = infer(record, lead, model, min_run=config.min_run)
            return evaluate_record(record, result.points, lead, config)

        if self.cfg.threads > 1:
            with ThreadPoolExecutor(max_workers=self.cfg.threads) as pool:
                matched = list(pool.map(one, records))
        else:
            matched = [one(r) for r in records]

        results = {r.patient_id: m for r, m in zip(records, matched)}
        scores = [
            patient_f_score(pid, match).model_copy(update={"split": split.tag(pid) if split else None})
            for pid, match in results.items()
        ]
        return EvaluationOutcome(results=results, scores=scores)

    def write_reports(self, name: str, outcome: EvaluationOutcome, split: DatasetSplit) -> MetricsReport:
        """``metrics_<name>.csv`` (test split), ``metrics_<name>_train.csv`` and ``patients_<name>.csv``."""
        test_report = outcome.metrics(split.test_ids)
        self.reports.save_metrics(f"metrics_{name}", test_report)
        self.reports.save_metrics(f"metrics_{name}_train", outcome.metrics(split.train_ids))
        self.reports.save_patient_scores(f"patients_{name}", outcome.scores)
        logger.info(
            "Wrote %s metrics for %d patients",
            name,
            len(outcome.results),
            extra={"model": name, "records": len(outcome.results)},
        )
        return test_report

    def export_predictions(
        self, model: ModelOrEnsemble, records: Sequence[EcgRecord], *, name: str, with_probs: bool = False
    ) -> Path:
        """Predicted waves per patient in the interchange annotation schema, optionally with raw probabilities."""
        lead = self.cfg.lead
        out_dir = self.cfg.output_dir / "predictions" / name
        out_dir.mkdir(parents=True, exist_ok=True)
        probs_repo = ReportRepository(self.cfg.output_dir / "probs" / name) if with_probs else None
        for record in records:
            result = infer(record, lead, model, min_run=self.cfg.min_run)
            document = {
                "patient_id": record.patient_id,
                "fs": record.sampling_rate,
                "annotations": {lead: [w.as_row() for w in points_to_annotations(result)]},
            }
            (out_dir / f"{record.patient_id}.json").write_text(json.dumps(document), encoding="utf-8")
            if probs_repo is not None:
                probs_repo.save_probabilities(record.patient_id, result.probs)
        return out_dir
