# SPDX-License-Identifier: MIT

"""RMSProp.

    v     <- rho * v + (1 - rho) * g^2
    theta <- theta - lr * g / (sqrt(v) + eps)

Steps return new arrays; the model and state passed in are left untouched.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np

from ..common.exceptions import NonFiniteError, ShapeError
from .models import Gradients, ModelParams, OptimizerState, ParamSlots, parameter_name


def init_optimizer_state(
    model: ModelParams, learning_rate: float = 0.001, rho: float = 0.9, eps: float = 1e-8
) -> OptimizerState:
    return OptimizerState(
        learning_rate=learning_rate,
        rho=rho,
        eps=eps,
        accumulators=[ParamSlots.zeros_like(layer) for layer in model.layers],
    )


def _check(model: ModelParams, grads: Gradients, state: OptimizerState) -> None:
    if len(grads) != len(model.layers) or len(state.accumulators) != len(model.layers):
        raise ShapeError("gradients and optimizer state must cover every layer")
    for i, (layer, grad, acc) in enumerate(zip(model.layers, grads, state.accumulators)):
        for slot in ("weights", "bias"):
            shape = getattr(layer, slot).shape
            if getattr(grad, slot).shape != shape or getattr(acc, slot).shape != shape:
                raise ShapeError(f"{parameter_name(i, slot)}: shape mismatch")
            if not np.all(np.isfinite(getattr(grad, slot))):
                raise NonFiniteError(f"non-finite gradient in {parameter_name(i, slot)}")


def rmsprop_step(
    model: ModelParams, grads: Gradients, state: OptimizerState
) -> Tuple[ModelParams, OptimizerState]:
    """Apply one RMSProp update.

    Raises
    ------
    NonFiniteError
        If any gradient entry is NaN or infinite; the message names the
        parameter array.
    """
    _check(model, grads, state)
    rho, lr, eps = state.rho, state.learning_rate, state.eps
    layers = []
    accumulators = []
    for layer, grad, acc in zip(model.layers, grads, state.accumulators):
        new = {}
        new_acc = {}
        for slot in ("weights", "bias"):
            g = getattr(grad, slot)
            v = rho * getattr(acc, slot) + (1.0 - rho) * g * g
            new[slot] = getattr(layer, slot) - lr * g / (np.sqrt(v) + eps)
            new_acc[slot] = v
        layers.append(layer.with_params(new["weights"], new["bias"]))
        accumulators.append(ParamSlots(**new_acc))
    updated = OptimizerState(
        learning_rate=lr,
        rho=rho,
        eps=eps,
        step=state.step + 1,
        accumulators=accumulators,
    )
    return ModelParams(layers=layers), updated
