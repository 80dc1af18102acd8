"""Unit tests for the generalization probe and the distillation report."""

from typing import Dict, List

import pytest

from ecg_segmentation.domain.common.models import PointType, SplitTag
from ecg_segmentation.domain.dataset.models import DatasetSplit, EcgRecord
from ecg_segmentation.domain.ensemble import (
    EnsembleConfig,
    EnsembleManifest,
    MemberEntry,
    categorize,
    distillation_report,
    generalization_probe,
)
from ecg_segmentation.domain.evaluate.models import MatchResult, PointMatch

IDS = ["a", "b", "c", "d"]


def _records() -> List[EcgRecord]:
    return [EcgRecord(patient_id=pid, leads={}) for pid in IDS]


def _score(model: Dict[str, float], record: EcgRecord) -> float:
    return model[record.patient_id]


def _manifest() -> EnsembleManifest:
    return EnsembleManifest(
        config=EnsembleConfig(),
        seed=0,
        members=[
            MemberEntry(index=0, iteration=1, seed=0, subset=IDS, removed=["a", "b"]),
            MemberEntry(index=1, iteration=2, seed=5, subset=["c", "d"], removed=["c", "d"]),
        ],
        history=[4, 2, 0],
    )


def test_probe_counts_good_patients() -> None:
    models = [
        {"a": 1.0, "b": 1.0, "c": 0.4, "d": 0.3},
        {"a": 0.995, "b": 0.6, "c": 1.0, "d": 0.99},
    ]
    entries = generalization_probe(_manifest(), models, _records(), _score)
    first, second = entries
    assert not first.probed
    assert first.own_good == 2
    assert first.unseen_good is None
    assert "no unseen" in first.notice
    assert second.probed
    assert (second.own_size, second.own_good) == (2, 2)
    assert (second.unseen_size, second.unseen_good) == (2, 1)


def test_probe_needs_two_members(caplog: pytest.LogCaptureFixture) -> None:
    manifest = EnsembleManifest(
        config=EnsembleConfig(),
        seed=0,
        members=[MemberEntry(index=0, iteration=1, seed=0, subset=IDS, removed=IDS)],
        history=[4, 0],
    )
    assert generalization_probe(manifest, [{}], _records(), _score) == []
    assert "at least two members" in caplog.text


def test_subsets_must_be_nested() -> None:
    with pytest.raises(ValueError):
        EnsembleManifest(
            config=EnsembleConfig(),
            seed=0,
            members=[
                MemberEntry(index=0, iteration=1, seed=0, subset=["a", "b"]),
                MemberEntry(index=1, iteration=2, seed=1, subset=["c"]),
            ],
        )
    with pytest.raises(ValueError):
        EnsembleManifest(config=EnsembleConfig(), seed=0, history=[3, 4])


@pytest.mark.parametrize(
    ("f_base", "f_ensemble", "category"),
    [
        (0.95, 0.995, "distilled"),
        (0.95, 0.85, "outlier"),
        (1.0, 1.0, "stable"),
        (0.995, 0.95, "stable"),
        (0.5, 0.95, "stable"),
    ],
)
def test_categories(f_base: float, f_ensemble: float, category: str) -> None:
    assert categorize(f_base, f_ensemble, EnsembleConfig()) == category


def _result(tp: int, fn: int = 0) -> MatchResult:
    """A result whose pooled F is 2tp / (2tp + fn)."""
    return MatchResult(entries={PointType.QRS_ONSET: PointMatch(tp=tp, fn=fn, errors_ms=[0.0] * tp)})


def test_distillation_report_on_three_patients() -> None:
    split = DatasetSplit(train_ids=["1"], test_ids=["2", "3"], seed=0)
    base = {"1": _result(1, 2), "2": _result(1), "3": _result(1)}
    ensemble = {"1": _result(1), "2": _result(1), "3": _result(1, 2)}
    report = distillation_report(base, ensemble, split)

    assert [r.patient_id for r in report.rows] == ["1", "2", "3"]
    assert [r.category for r in report.rows] == ["distilled", "stable", "outlier"]
    assert report.rows[0].f_base == pytest.approx(0.5)
    assert report.rows[0].split is SplitTag.TRAIN

    test = report.for_split(SplitTag.TEST)
    assert test is not None
    assert test.patients == 2
    assert test.f_base == pytest.approx(1.0)
    assert test.f_ensemble == pytest.approx(4 / 6)
    assert (test.outliers_base, test.outliers_ensemble) == (0, 1)
    assert test.categories == {"distilled": 0, "outlier": 1, "stable": 1}

    train = report.for_split(SplitTag.TRAIN)
    assert train is not None
    assert (train.f_base, train.f_ensemble) == (pytest.approx(0.5), pytest.approx(1.0))
