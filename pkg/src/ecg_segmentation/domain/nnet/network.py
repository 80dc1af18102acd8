# SPDX-License-Identifier: MIT

"""The segmentation network: initialisation, forward pass, loss and gradients."""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from ..common.exceptions import DataValidationError, ShapeError
from .layers import (
    activate,
    activation_grad,
    conv_backward_batch,
    conv_forward_batch,
    log_softmax,
    softmax,
)
from .models import N_CLASSES, ArchitectureSpec, ConvLayer, Gradients, ModelParams, ParamSlots

# (layer input, pre-activation) per layer
_Cache = List[Tuple[np.ndarray, np.ndarray]]


def init_model(
    arch: ArchitectureSpec | None = None, seed: int = 0, dtype: str | np.dtype = np.float64
) -> ModelParams:
    """Glorot-uniform weights in ``±sqrt(6 / (fan_in + fan_out))``, zero biases."""
    arch = arch or ArchitectureSpec()
    rng = np.random.default_rng(seed)
    layers = []
    for c_in, c_out, kernel, activation in arch.layer_shapes():
        limit = np.sqrt(6.0 / (c_in * kernel + c_out * kernel))
        weights = rng.uniform(-limit, limit, size=(c_out, c_in, kernel)).astype(dtype)
        layers.append(
            ConvLayer(
                in_channels=c_in,
                out_channels=c_out,
                kernel_size=kernel,
                activation=activation,
                weights=weights,
                bias=np.zeros(c_out, dtype=dtype),
            )
        )
    return ModelParams(layers=layers)


def param_count(model: ModelParams) -> int:
    """Sum over layers of ``out * in * kernel + out``."""
    return model.param_count


def _as_batch(x: np.ndarray, dtype: np.dtype) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=dtype)
    if arr.ndim == 1:
        return arr[None, None, :], True
    if arr.ndim == 2:
        return arr[None], True
    if arr.ndim == 3:
        return arr, False
    raise ShapeError(f"expected a (channels, length) or (batch, channels, length) input, got {arr.shape}")


def _logits(x: np.ndarray, model: ModelParams) -> Tuple[np.ndarray, _Cache]:
    if x.shape[1] != 1:
        raise ShapeError(f"the network takes one input channel, got {x.shape[1]}")
    cache: _Cache = []
    a = x
    for layer in model.layers:
        z = conv_forward_batch(a, layer.weights, layer.bias)
        cache.append((a, z))
        a = activate(z, layer.activation)
    return a, cache


def forward(x: np.ndarray, model: ModelParams) -> np.ndarray:
    """Per-time-step class probabilities.

    Parameters
    ----------
    x:
        Input signal of shape ``(1, T)`` (or ``(T,)``), or a batch
        ``(B, 1, T)``.

    Returns
    -------
    numpy.ndarray
        ``(4, T)`` (or ``(B, 4, T)``) array whose columns lie on the simplex.
    """
    batch, single = _as_batch(x, model.dtype)
    logits, _ = _logits(batch, model)
    probs = softmax(logits, axis=1)
    return probs[0] if single else probs


def _check_target(target: np.ndarray, shape: Tuple[int, ...]) -> None:
    if target.shape != shape:
        raise ShapeError(f"target shape {target.shape} != prediction shape {shape}")
    if target.shape[-2] != N_CLASSES:
        raise ShapeError(f"target must have {N_CLASSES} channels")
    binary = np.all((target == 0) | (target == 1))
    if not binary or not np.all(target.sum(axis=-2) == 1):
        raise DataValidationError("target is not one-hot at every time step")


def cross_entropy_loss(probs: np.ndarray, target: np.ndarray) -> float:
    """Mean categorical cross entropy ``-(1/T) sum_t sum_c target log probs``.

    Batched inputs are averaged over batch items as well as time steps.
    """
    probs = np.asarray(probs, dtype=np.float64)
    target = np.asarray(target)
    _check_target(target, probs.shape)
    steps = probs.size // N_CLASSES
    picked = np.where(target == 1, np.log(np.clip(probs, np.finfo(np.float64).tiny, 1.0)), 0.0)
    return float(-picked.sum() / steps)


def loss_and_gradients(
    x: np.ndarray, target: np.ndarray, model: ModelParams, *, normalizer: int | None = None
) -> Tuple[float, Gradients]:
    """Loss and exact gradients for a signal or a batch.

    ``normalizer`` is the number of time steps the loss is averaged over; it
    defaults to all steps of ``x`` and lets a caller split one mini-batch into
    chunks whose gradients sum to the full-batch gradient.
    """
    batch, single = _as_batch(x, model.dtype)
    tgt = np.asarray(target, dtype=model.dtype)
    if single:
        tgt = tgt[None]
    logits, cache = _logits(batch, model)
    _check_target(tgt, logits.shape)
    steps = normalizer or (logits.shape[0] * logits.shape[2])

    loss = float(-(tgt * log_softmax(logits, axis=1)).sum() / steps)
    # d(loss)/d(logits) for softmax followed by cross entropy
    delta = (softmax(logits, axis=1) - tgt) / steps

    grads: List[ParamSlots] = [None] * len(model.layers)  # type: ignore[list-item]
    for idx in range(len(model.layers) - 1, -1, -1):
        layer = model.layers[idx]
        a_in, z = cache[idx]
        dz = activation_grad(z, delta, layer.activation)
        da, dw, db = conv_backward_batch(a_in, layer.weights, dz, need_input_grad=idx > 0)
        grads[idx] = ParamSlots(weights=dw, bias=db)
        if da is not None:
            delta = da
    return loss, grads


def backward(x: np.ndarray, target: np.ndarray, model: ModelParams) -> Gradients:
    """Gradients of ``cross_entropy_loss(forward(x), target)`` per layer."""
    return loss_and_gradients(x, target, model)[1]
