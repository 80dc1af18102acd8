# SPDX-License-Identifier: MIT

"""Same-padded 1-D convolution, ReLU and softmax with hand-derived gradients.

The batched kernels work on ``(batch, channels, length)`` arrays and express
the convolution as a tensor contraction over sliding windows of the
zero-padded input:

    z[b, o, t] = bias[o] + sum_i sum_k w[o, i, k] * x_pad[b, i, t + k]

with ``x_pad`` padded by ``(kernel - 1) / 2`` zeros on each side.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..common.exceptions import ShapeError
from .models import Activation, ConvLayer


def _windows(x: np.ndarray, kernel: int) -> np.ndarray:
    pad = (kernel - 1) // 2
    padded = np.pad(x, ((0, 0), (0, 0), (pad, pad)))
    return sliding_window_view(padded, kernel, axis=2)  # (B, C, T, K)


def conv_forward_batch(x: np.ndarray, weights: np.ndarray, bias: np.ndarray) -> np.ndarray:
    """Pre-activation output ``(B, out, T)`` of a same-padded convolution."""
    if x.ndim != 3 or x.shape[1] != weights.shape[1]:
        raise ShapeError(
            f"input with shape {x.shape} does not match {weights.shape[1]} input channels"
        )
    z = np.tensordot(_windows(x, weights.shape[2]), weights, axes=([1, 3], [1, 2]))
    return np.ascontiguousarray(z.transpose(0, 2, 1)) + bias[None, :, None]


def conv_backward_batch(
    x: np.ndarray, weights: np.ndarray, dz: np.ndarray, *, need_input_grad: bool = True
) -> tuple[np.ndarray | None, np.ndarray, np.ndarray]:
    """Gradients ``(dx, dw, db)`` of a convolution given ``dz = dL/dz``."""
    kernel = weights.shape[2]
    dw = np.tensordot(dz, _windows(x, kernel), axes=([0, 2], [0, 2]))
    db = dz.sum(axis=(0, 2))
    if not need_input_grad:
        return None, dw, db
    # Full correlation of dz with the flipped kernel.
    dx = np.tensordot(_windows(dz, kernel), weights[:, :, ::-1], axes=([1, 3], [0, 2]))
    return np.ascontiguousarray(dx.transpose(0, 2, 1)), dw, db


def activate(z: np.ndarray, activation: Activation) -> np.ndarray:
    if activation is Activation.RELU:
        return np.maximum(z, 0.0)
    return z


def activation_grad(z: np.ndarray, da: np.ndarray, activation: Activation) -> np.ndarray:
    if activation is Activation.RELU:
        return da * (z > 0)
    return da


def conv1d_forward(x: np.ndarray, layer: ConvLayer) -> np.ndarray:
    """Apply one layer to a single ``(channels, length)`` signal.

    Raises
    ------
    ShapeError
        If the input channel count differs from ``layer.in_channels``.
    """
    x = np.asarray(x, dtype=layer.weights.dtype)
    if x.ndim != 2 or x.shape[0] != layer.in_channels:
        raise ShapeError(
            f"layer expects {layer.in_channels} input channels, got input of shape {x.shape}"
        )
    z = conv_forward_batch(x[None], layer.weights, layer.bias)
    return activate(z, layer.activation)[0]


def softmax(logits: np.ndarray, axis: int = -2) -> np.ndarray:
    """Softmax over the channel axis with max subtraction."""
    shifted = logits - logits.max(axis=axis, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=axis, keepdims=True)


def log_softmax(logits: np.ndarray, axis: int = -2) -> np.ndarray:
    shifted = logits - logits.max(axis=axis, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=axis, keepdims=True))
