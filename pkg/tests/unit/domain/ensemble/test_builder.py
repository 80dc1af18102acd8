"""Unit tests for the ensemble builder with stub models.

A stub model is a mapping from patient id to the F-score it achieves, so the
screening logic runs without any network training.
"""

from typing import Dict, List, Sequence

import pytest

from ecg_segmentation.domain.common.exceptions import DataValidationError
from ecg_segmentation.domain.dataset.models import EcgRecord
from ecg_segmentation.domain.ensemble import EnsembleConfig, MemberEntry, build_ensemble
from ecg_segmentation.utils.seeding import derive_seed

Stub = Dict[str, float]
IDS = ["a", "b", "c", "d"]


def _records(ids: Sequence[str] = IDS) -> List[EcgRecord]:
    return [EcgRecord(patient_id=pid, leads={}) for pid in ids]


def _score(model: Stub, record: EcgRecord) -> float:
    return model[record.patient_id]


class Trainer:
    """Hands out pre-scripted stubs and records the seeds it was called with."""

    def __init__(self, scripted: List[Stub], fallback: float = 0.5) -> None:
        self.scripted = list(scripted)
        self.fallback = fallback
        self.calls: List[tuple] = []

    def __call__(self, subset: Sequence[EcgRecord], seed: int) -> Stub:
        self.calls.append((tuple(r.patient_id for r in subset), seed))
        if self.scripted:
            return self.scripted.pop(0)
        return {pid: self.fallback for pid in IDS}


def test_perfect_initial_member_exhausts_subset() -> None:
    trainer = Trainer([])
    result = build_ensemble(
        _records(), EnsembleConfig(), trainer, _score, seed=3, initial_member={p: 1.0 for p in IDS}
    )
    manifest = result.manifest
    assert len(result.models) == 1
    assert manifest.history == [4, 0]
    assert manifest.stop_reason == "exhausted"
    assert manifest.attempts == 1
    assert manifest.irreducible == []
    assert trainer.calls == []


def test_members_train_on_shrinking_subsets() -> None:
    initial = {"a": 1.0, "b": 0.995, "c": 0.5, "d": 0.2}
    trainer = Trainer([{"a": 0.0, "b": 0.0, "c": 0.99, "d": 0.98}, {p: 1.0 for p in IDS}])
    result = build_ensemble(
        _records(), EnsembleConfig(), trainer, _score, seed=1, initial_member=initial
    )
    manifest = result.manifest
    assert manifest.history == [4, 2, 1, 0]
    assert [m.subset for m in manifest.members] == [IDS, ["c", "d"], ["d"]]
    assert [m.removed for m in manifest.members] == [["a", "b"], ["c"], ["d"]]
    assert trainer.calls[0] == (("c", "d"), derive_seed(1, "member", 1, 0))
    assert manifest.train_ids == IDS


def test_stagnation_stops_after_retries() -> None:
    """The non-shrinking iteration is retrained, then discarded."""
    initial = {"a": 1.0, "b": 0.5, "c": 0.5, "d": 0.5}
    trainer = Trainer([])
    config = EnsembleConfig(stagnation_retries=2)
    result = build_ensemble(_records(), config, trainer, _score, seed=9, initial_member=initial)
    manifest = result.manifest
    assert manifest.stop_reason == "stagnation"
    assert len(manifest.members) == 1
    assert manifest.attempts == 4
    assert manifest.irreducible == ["b", "c", "d"]
    assert [seed for _, seed in trainer.calls] == [derive_seed(9, "member", 1, r) for r in range(3)]


def test_retrained_member_records_retrains() -> None:
    initial = {"a": 1.0, "b": 0.5, "c": 0.5, "d": 0.5}
    trainer = Trainer([{p: 0.1 for p in IDS}, {p: 1.0 for p in IDS}])
    result = build_ensemble(_records(), EnsembleConfig(), trainer, _score, initial_member=initial)
    second = result.manifest.members[1]
    assert second.retrains == 1
    assert result.manifest.stages[1].retrains == 1
    assert result.manifest.stop_reason == "exhausted"


def test_zero_threshold_screens_everyone_at_once() -> None:
    trainer = Trainer([])
    result = build_ensemble(_records(), EnsembleConfig(screen_threshold=0.0), trainer, _score)
    assert len(result.models) == 1
    assert result.manifest.history == [4, 0]
    assert len(trainer.calls) == 1


def test_iteration_cap_keeps_a_single_member() -> None:
    """An ensemble that never screens anyone still has one member."""
    trainer = Trainer([], fallback=0.2)
    config = EnsembleConfig(iteration_cap=2)
    initial = {p: 0.3 for p in IDS}
    result = build_ensemble(_records(), config, trainer, _score, initial_member=initial)
    manifest = result.manifest
    assert manifest.stop_reason == "iteration_cap"
    assert manifest.attempts == 2
    assert len(result.models) == 1
    assert manifest.history == [4]
    assert manifest.irreducible == IDS


def test_on_member_checkpoint_is_stored() -> None:
    saved = []

    def on_member(entry: MemberEntry, model: Stub) -> str:
        saved.append(entry.index)
        return f"checkpoints/member{entry.index}.npz"

    result = build_ensemble(
        _records(), EnsembleConfig(screen_threshold=0.0), Trainer([]), _score, on_member=on_member
    )
    assert saved == [0]
    assert result.manifest.members[0].checkpoint == "checkpoints/member0.npz"


def test_threaded_scoring_gives_same_manifest() -> None:
    initial = {"a": 1.0, "b": 0.5, "c": 0.5, "d": 0.5}
    serial = build_ensemble(
        _records(), EnsembleConfig(), Trainer([]), _score, initial_member=initial
    )
    threaded = build_ensemble(
        _records(), EnsembleConfig(), Trainer([]), _score, initial_member=initial, threads=3
    )
    assert serial.manifest == threaded.manifest


def test_empty_training_set() -> None:
    with pytest.raises(DataValidationError):
        build_ensemble([], EnsembleConfig(), Trainer([]), _score)
