"""Unit tests for resumable base training and its loss log."""

import logging
from pathlib import Path
from typing import Callable, List

import numpy as np
import pytest

from ecg_segmentation.application.model_training import ModelTrainingService, partial_path
from ecg_segmentation.config.settings import Settings
from ecg_segmentation.domain.dataset.models import EcgRecord
from ecg_segmentation.domain.train import TrainProgress, train_base
from ecg_segmentation.infrastructure.persistence import load_checkpoint, save_checkpoint


def _settings(output_dir: Path, **overrides: object) -> Settings:
    values = dict(
        _env_file=None,
        output_dir=output_dir,
        conv_channels=(1, 4, 4),
        kernel_size=5,
        window_seconds=1.0,
        batch_size=2,
        epochs=2,
        steps_per_epoch=2,
        base_runs=1,
        seed=3,
    )
    values.update(overrides)
    return Settings(**values)


def test_base_run_writes_one_loss_line_per_epoch(
    record_factory: Callable[..., EcgRecord], tmp_path: Path
) -> None:
    service = ModelTrainingService(_settings(tmp_path))
    (result,) = service.train_base_runs([record_factory()], seed=3)

    lines = (tmp_path / "loss_base_run0.csv").read_text().splitlines()
    assert lines[0] == "epoch,mean_loss"
    assert [line.split(",")[0] for line in lines[1:]] == ["1", "2"]
    assert service.load_loss_log(0) == pytest.approx(result.epoch_losses, abs=1e-6)

    final = service.base_checkpoint(0)
    assert final.exists()
    assert not partial_path(final).exists()
    _, state, meta = load_checkpoint(final)
    assert state is not None and state.step == 4
    assert meta["epoch_losses"] == pytest.approx(result.epoch_losses)


def test_interrupted_run_resumes_from_partial_checkpoint(
    record_factory: Callable[..., EcgRecord], tmp_path: Path, caplog: pytest.LogCaptureFixture
) -> None:
    caplog.set_level(logging.INFO)
    records = [record_factory("a"), record_factory("b", seed=1)]
    straight = ModelTrainingService(_settings(tmp_path / "straight"))
    (expected,) = straight.train_base_runs(records, seed=3)

    service = ModelTrainingService(_settings(tmp_path / "resumed"))
    config = service.cfg.train_config(3, checkpoint_path=service.base_checkpoint(0))
    snapshots: List[TrainProgress] = []
    train_base(records, config.model_copy(update={"epochs": 1}), on_epoch=snapshots.append)
    progress = snapshots[-1]
    save_checkpoint(
        partial_path(service.base_checkpoint(0)),
        progress.model,
        progress.state,
        meta={
            "kind": "base",
            "run": 0,
            "seed": 3,
            "lead": config.lead,
            "epoch_losses": progress.epoch_losses,
            "initial_loss": progress.initial_loss,
        },
    )

    (result,) = service.train_base_runs(records, seed=3)
    assert "Resuming" in caplog.text
    assert len(result.step_losses) == 2
    assert result.epoch_losses == expected.epoch_losses
    for a, b in zip(result.model.layers, expected.model.layers):
        assert np.array_equal(a.weights, b.weights)
    assert service.load_loss_log(0) == pytest.approx(expected.epoch_losses, abs=1e-6)


def test_progress_of_another_seed_is_ignored(
    record_factory: Callable[..., EcgRecord], tmp_path: Path, caplog: pytest.LogCaptureFixture
) -> None:
    service = ModelTrainingService(_settings(tmp_path))
    config = service.cfg.train_config(9, checkpoint_path=service.base_checkpoint(0))
    snapshots: List[TrainProgress] = []
    one_epoch = config.model_copy(update={"epochs": 1})
    train_base([record_factory()], one_epoch, on_epoch=snapshots.append)
    progress = snapshots[-1]
    path = save_checkpoint(
        tmp_path / "progress.npz",
        progress.model,
        progress.state,
        meta={"seed": 9, "lead": config.lead, "epoch_losses": [1.0], "initial_loss": 1.0},
    )
    assert service.load_progress(path, config.model_copy(update={"seed": 3})) is None
    assert "another run" in caplog.text
    assert service.load_progress(path, config).epochs_done == 1


def test_resumable_training_needs_a_checkpoint_path(
    record_factory: Callable[..., EcgRecord], tmp_path: Path
) -> None:
    service = ModelTrainingService(_settings(tmp_path))
    with pytest.raises(ValueError, match="checkpoint path"):
        service.train_resumable(
            [record_factory()], service.cfg.train_config(3), loss_key="loss", meta={}
        )
