"""Unit tests for the RMSProp optimizer."""

import numpy as np
import pytest

from ecg_segmentation.domain.common.exceptions import NonFiniteError
from ecg_segmentation.domain.nnet import (
    ArchitectureSpec,
    Gradients,
    ModelParams,
    ParamSlots,
    init_model,
    init_optimizer_state,
    rmsprop_step,
)


def _constant_grads(model: ModelParams, value: float) -> Gradients:
    return [
        ParamSlots(weights=np.full_like(layer.weights, value), bias=np.full_like(layer.bias, value))
        for layer in model.layers
    ]


def test_first_step_moves_by_lr_over_sqrt_one_minus_rho(tiny_arch: ArchitectureSpec) -> None:
    """With zero accumulators the first update is lr * g / (sqrt((1 - rho) g^2) + eps)."""
    model = init_model(tiny_arch, seed=0)
    state = init_optimizer_state(model, learning_rate=0.01, rho=0.9, eps=1e-8)
    updated, new_state = rmsprop_step(model, _constant_grads(model, 2.0), state)
    expected = 0.01 * 2.0 / (np.sqrt(0.1 * 4.0) + 1e-8)
    delta = model.layers[0].weights - updated.layers[0].weights
    assert np.allclose(delta, expected)
    assert np.allclose(new_state.accumulators[0].weights, 0.4)
    assert new_state.step == 1


def test_step_leaves_inputs_untouched(tiny_arch: ArchitectureSpec) -> None:
    model = init_model(tiny_arch, seed=0)
    before = model.copy()
    state = init_optimizer_state(model)
    rmsprop_step(model, _constant_grads(model, 0.5), state)
    assert np.array_equal(model.layers[1].weights, before.layers[1].weights)
    assert not state.accumulators[1].weights.any()


def test_non_finite_gradient_names_parameter(tiny_arch: ArchitectureSpec) -> None:
    model = init_model(tiny_arch, seed=0)
    grads = _constant_grads(model, 0.1)
    grads[1].bias[0] = np.nan
    with pytest.raises(NonFiniteError, match=r"layer2\.bias"):
        rmsprop_step(model, grads, init_optimizer_state(model))


def test_zero_gradient_makes_no_step(tiny_arch: ArchitectureSpec) -> None:
    model = init_model(tiny_arch, seed=0)
    state = init_optimizer_state(model, learning_rate=0.01)
    updated, new_state = rmsprop_step(model, _constant_grads(model, 0.0), state)
    for before, after in zip(model.layers, updated.layers):
        assert np.array_equal(before.weights, after.weights)
        assert np.array_equal(before.bias, after.bias)
    assert not new_state.accumulators[0].weights.any()
    assert new_state.step == 1
