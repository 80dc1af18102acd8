# SPDX-License-Identifier: MIT

"""Post-hoc analysis of a built ensemble."""

from __future__ import annotations

import logging
from typing import Dict, List, Mapping, Sequence

from ..common.models import SplitTag
from ..dataset.models import DatasetSplit, EcgRecord
from ..evaluate.metrics import f_score
from ..evaluate.models import MatchResult
from .builder import ScorePatient, score_patients
from .models import (
    Category,
    DistillationReport,
    DistillationRow,
    EnsembleConfig,
    EnsembleManifest,
    ProbeEntry,
    SplitSummary,
)

logger = logging.getLogger(__name__)


def generalization_probe(
    manifest: EnsembleManifest,
    models: Sequence,
    records: Sequence[EcgRecord],
    score_patient: ScorePatient,
    *,
    threads: int = 1,
) -> List[ProbeEntry]:
    """Good patients of every member on its own subset and on the unseen training patients.

    The first member was trained on the whole training set and has no unseen
    part; it is listed without a probe.  A single-member ensemble yields an
    empty probe.
    """
    if len(manifest.members) < 2:
        logger.warning("Generalization probe needs at least two members, got %d", len(manifest.members))
        return []
    threshold = manifest.config.screen_threshold
    by_id = {r.patient_id: r for r in records}
    all_ids = set(by_id)

    entries: List[ProbeEntry] = []
    for member, model in zip(manifest.members, models):
        own = [by_id[pid] for pid in member.subset if pid in by_id]
        unseen = [by_id[pid] for pid in sorted(all_ids - set(member.subset))]
        own_scores = score_patients(model, own, score_patient, threads=threads)
        own_good = sum(f >= threshold for f in own_scores.values())
        if not unseen:
            entries.append(
                ProbeEntry(
                    member=member.index,
                    own_size=len(own),
                    own_good=own_good,
                    unseen_size=0,
                    probed=False,
                    notice="no probe: member has no unseen training patients",
                )
            )
            continue
        unseen_scores = score_patients(model, unseen, score_patient, threads=threads)
        entries.append(
            ProbeEntry(
                member=member.index,
                own_size=len(own),
                own_good=own_good,
                unseen_size=len(unseen),
                unseen_good=sum(f >= threshold for f in unseen_scores.values()),
            )
        )
    return entries


def categorize(f_base: float, f_ensemble: float, config: EnsembleConfig) -> Category:
    if f_ensemble < config.outlier_threshold:
        return "outlier"
    if f_base < config.screen_threshold <= f_ensemble:
        return "distilled"
    return "stable"


def distillation_report(
    base_results: Mapping[str, MatchResult],
    ensemble_results: Mapping[str, MatchResult],
    split: DatasetSplit,
    config: EnsembleConfig | None = None,
) -> DistillationReport:
    """Per-patient F of the base network and of the ensemble, with summaries per split.

    The overall F of a split pools the counts of all its patients before
    taking the micro F-score.
    """
    config = config or EnsembleConfig()
    rows: List[DistillationRow] = []
    for pid in sorted(base_results):
        f_base = f_score(base_results[pid].pooled)
        f_ens = f_score(ensemble_results[pid].pooled)
        rows.append(
            DistillationRow(
                patient_id=pid,
                split=split.tag(pid),
                f_base=f_base,
                f_ensemble=f_ens,
                category=categorize(f_base, f_ens, config),
            )
        )

    summary: List[SplitSummary] = []
    for tag in SplitTag:
        ids = [r.patient_id for r in rows if r.split == tag]
        if not ids:
            continue
        tagged = [r for r in rows if r.split == tag]
        counts: Dict[str, int] = {c: 0 for c in ("distilled", "outlier", "stable")}
        for row in tagged:
            counts[row.category] += 1
        summary.append(
            SplitSummary(
                split=tag,
                patients=len(ids),
                f_base=f_score(MatchResult.merge(base_results[p] for p in ids).pooled),
                f_ensemble=f_score(MatchResult.merge(ensemble_results[p] for p in ids).pooled),
                outliers_base=sum(r.f_base < config.outlier_threshold for r in tagged),
                outliers_ensemble=sum(r.f_ensemble < config.outlier_threshold for r in tagged),
                categories=counts,
            )
        )
    return DistillationReport(
        rows=rows,
        summary=summary,
        screen_threshold=config.screen_threshold,
        outlier_threshold=config.outlier_threshold,
    )
