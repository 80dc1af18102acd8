"""Unit tests for model checkpoints."""

import json
from pathlib import Path

import numpy as np
import pytest

from ecg_segmentation.domain.common.exceptions import DataNotAvailableError, ShapeError
from ecg_segmentation.domain.nnet import ArchitectureSpec, init_model, init_optimizer_state
from ecg_segmentation.infrastructure.persistence import load_checkpoint, save_checkpoint


def test_checkpoint_restores_model_state_and_meta(
    tiny_arch: ArchitectureSpec, tmp_path: Path
) -> None:
    model = init_model(tiny_arch, seed=2)
    state = init_optimizer_state(model, learning_rate=0.005).model_copy(update={"step": 12})
    path = save_checkpoint(tmp_path / "ckpt" / "base.npz", model, state, meta={"run": 0, "seed": 7})

    loaded, loaded_state, meta = load_checkpoint(path)
    for a, b in zip(model.layers, loaded.layers):
        assert np.array_equal(a.weights, b.weights)
        assert np.array_equal(a.bias, b.bias)
        assert a.activation == b.activation
    assert loaded_state is not None
    assert loaded_state.step == 12
    assert loaded_state.learning_rate == 0.005
    assert meta["seed"] == 7
    assert meta["param_count"] == model.param_count


def test_checkpoint_without_optimizer_state(tiny_arch: ArchitectureSpec, tmp_path: Path) -> None:
    path = save_checkpoint(tmp_path / "member0.npz", init_model(tiny_arch))
    _, state, meta = load_checkpoint(path)
    assert state is None
    assert "optimizer" not in meta


def test_parameter_count_mismatch_is_rejected(tiny_arch: ArchitectureSpec, tmp_path: Path) -> None:
    model = init_model(tiny_arch)
    path = save_checkpoint(tmp_path / "a.npz", model)
    with np.load(path) as data:
        arrays = {k: data[k] for k in data.files}
    meta = json.loads(str(arrays["meta"]))
    meta["param_count"] += 1
    arrays["meta"] = np.array(json.dumps(meta))
    tampered = tmp_path / "b.npz"
    np.savez(tampered, **arrays)
    with pytest.raises(ShapeError):
        load_checkpoint(tampered)


def test_missing_checkpoint(tmp_path: Path) -> None:
    with pytest.raises(DataNotAvailableError):
        load_checkpoint(tmp_path / "none.npz")
