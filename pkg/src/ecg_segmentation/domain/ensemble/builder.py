# SPDX-License-Identifier: MIT

"""Iterative error-correcting ensemble.

Each iteration trains a network on the current training subset, scores every
subset patient with the micro F-score on its full record and removes the
patients scoring at least the screening threshold.  A network that removes
nobody is discarded and the iteration is re-trained with a fresh seed.  The
loop ends when the subset is empty, when an iteration exhausts its
re-trainings, or when the total number of training attempts reaches the cap;
patients still in the subset are reported as irreducible.

Training and scoring are injected, so the loop runs the same with real
networks and with stub models.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Generic, List, Optional, Sequence, TypeVar

from ...utils.seeding import derive_seed
from ..common.exceptions import DataValidationError
from ..dataset.models import EcgRecord
from ..delineate.decoding import infer
from ..evaluate.metrics import evaluate_record, patient_f_score
from ..evaluate.models import EvaluationConfig
from ..nnet.models import ModelParams
from .models import EnsembleConfig, EnsembleManifest, MemberEntry, StageEntry

logger = logging.getLogger(__name__)

M = TypeVar("M")

TrainMember = Callable[[Sequence[EcgRecord], int], M]
ScorePatient = Callable[[M, EcgRecord], float]
MemberCallback = Callable[[MemberEntry, M], Optional[str]]


class BuildResult(Generic[M]):
    """Manifest plus the accepted member models, in ensemble order."""

    def __init__(self, manifest: EnsembleManifest, models: List[M]) -> None:
        self.manifest = manifest
        self.models = models


def patient_scorer(
    lead: str, config: EvaluationConfig | None = None
) -> Callable[[ModelParams | Sequence[ModelParams], EcgRecord], float]:
    """Score function: infer on the whole record of ``lead`` and return its F."""
    config = config or EvaluationConfig()

    def score(model: ModelParams | Sequence[ModelParams], record: EcgRecord) -> float:
        result = infer(record, lead, model, min_run=config.min_run)
        match = evaluate_record(record, result.points, lead, config)
        return patient_f_score(record.patient_id, match).f

    return score


def score_patients(
    model: M,
    records: Sequence[EcgRecord],
    score_patient: ScorePatient,
    *,
    threads: int = 1,
) -> Dict[str, float]:
    if threads <= 1:
        return {r.patient_id: score_patient(model, r) for r in records}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        scores = list(pool.map(lambda r: score_patient(model, r), records))
    return {r.patient_id: s for r, s in zip(records, scores)}


def build_ensemble(
    records: Sequence[EcgRecord],
    config: EnsembleConfig,
    train_member: TrainMember,
    score_patient: ScorePatient,
    *,
    seed: int = 0,
    initial_member: Optional[M] = None,
    on_member: Optional[MemberCallback] = None,
    threads: int = 1,
) -> BuildResult:
    """Build the ensemble on ``records`` (the training split, preprocessed).

    Parameters
    ----------
    train_member:
        ``train_member(subset_records, seed)`` returns a trained model.
    score_patient:
        ``score_patient(model, record)`` returns the patient's F in [0, 1].
    initial_member:
        Already trained network for the first attempt of the first
        iteration (normally the base network, trained on the full set).
    on_member:
        Called with every accepted member; may return a checkpoint path that
        is stored in the manifest.
    """
    if not records:
        raise DataValidationError("ensemble training set is empty")
    by_id = {r.patient_id: r for r in records}
    subset = sorted(by_id)

    manifest = EnsembleManifest(config=config, seed=seed, history=[len(subset)])
    models: List = []
    attempts = 0
    iteration = 0
    stop_reason = "exhausted"

    while subset:
        if attempts >= config.iteration_cap:
            stop_reason = "iteration_cap"
            break
        iteration += 1
        subset_records = [by_id[pid] for pid in subset]
        retrains = 0
        accepted = False
        model = None
        member_seed = seed
        remaining: List[str] = subset

        while True:
            if iteration == 1 and retrains == 0 and initial_member is not None:
                model = initial_member
            else:
                member_seed = derive_seed(seed, "member", len(models), retrains)
                model = train_member(subset_records, member_seed)
            attempts += 1

            scores = score_patients(model, subset_records, score_patient, threads=threads)
            remaining = [pid for pid in subset if scores[pid] < config.screen_threshold]
            logger.info(
                "Iteration %d attempt %d: %d of %d patients screened out",
                iteration,
                retrains + 1,
                len(subset) - len(remaining),
                len(subset),
                extra={"iteration": iteration, "subset_size": len(subset), "remaining": len(remaining)},
            )
            if len(remaining) < len(subset):
                accepted = True
                break
            if retrains >= config.stagnation_retries:
                stop_reason = "stagnation"
                break
            if attempts >= config.iteration_cap:
                stop_reason = "iteration_cap"
                break
            retrains += 1

        if not accepted and models:
            logger.warning(
                "Iteration %d stopped (%s) with %d patients left",
                iteration,
                stop_reason,
                len(subset),
                extra={"iteration": iteration, "reason": stop_reason},
            )
            break

        # a first iteration that never shrinks the subset still yields one member
        entry = MemberEntry(
            index=len(models),
            iteration=iteration,
            retrains=retrains,
            seed=member_seed,
            subset=list(subset),
            removed=sorted(set(subset) - set(remaining)),
        )
        if on_member is not None:
            entry = entry.model_copy(update={"checkpoint": on_member(entry, model)})
        models.append(model)
        manifest.members.append(entry)
        manifest.stages.append(StageEntry(iteration=iteration, subset_size=len(subset), retrains=retrains))
        if not accepted:
            break
        subset = remaining
        manifest.history.append(len(subset))

    result = manifest.model_copy(
        update={"irreducible": list(subset), "attempts": attempts, "stop_reason": stop_reason}
    )
    logger.info(
        "Ensemble built: %d members, %d attempts, %d irreducible patients (%s)",
        len(models),
        attempts,
        len(subset),
        stop_reason,
        extra={"members": len(models), "attempts": attempts, "reason": stop_reason},
    )
    return BuildResult(EnsembleManifest.model_validate(result.model_dump()), models)
