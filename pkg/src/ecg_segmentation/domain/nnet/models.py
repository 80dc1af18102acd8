# SPDX-License-Identifier: MIT

"""Network domain models: layers, parameters and optimizer state.

Tensors are numpy arrays.  A single signal is ``(channels, length)``; the
batched code paths use ``(batch, channels, length)``.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ...config.constants import CHANNEL_NAMES
from ..common.exceptions import ShapeError

N_CLASSES = len(CHANNEL_NAMES)


class Activation(str, Enum):
    RELU = "relu"
    NONE = "none"


class ArchitectureSpec(BaseModel):
    """Layer geometry of the segmenter.

    ``conv_channels`` lists the widths of the convolutional stack starting
    with the single input lead; every conv layer uses ``kernel_size`` with
    same padding and ReLU.  A pointwise layer from the last width to the four
    output channels (P, QRS, T, background) closes the network.  The default
    ``(1, 16, 16, 32, 32, 32, 32, 32)`` with kernel 9 gives 8 layers and
    44,244 parameters.
    """

    model_config = ConfigDict(frozen=True)

    conv_channels: Tuple[int, ...] = (1, 16, 16, 32, 32, 32, 32, 32)
    kernel_size: int = Field(default=9, ge=1)

    @field_validator("kernel_size")
    @classmethod
    def _odd(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError("kernel_size must be odd")
        return value

    @field_validator("conv_channels")
    @classmethod
    def _positive(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if not value or value[0] != 1 or any(c < 1 for c in value):
            raise ValueError("conv_channels must start with 1 and hold positive widths")
        return value

    def layer_shapes(self) -> List[Tuple[int, int, int, Activation]]:
        """``(in, out, kernel, activation)`` per layer, input to output."""
        shapes = [
            (c_in, c_out, self.kernel_size, Activation.RELU)
            for c_in, c_out in zip(self.conv_channels, self.conv_channels[1:])
        ]
        shapes.append((self.conv_channels[-1], N_CLASSES, 1, Activation.NONE))
        return shapes

    @property
    def receptive_field(self) -> int:
        return 1 + (len(self.conv_channels) - 1) * (self.kernel_size - 1)


class ConvLayer(BaseModel):
    """One same-padded 1-D convolution with optional ReLU."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    in_channels: int = Field(..., ge=1)
    out_channels: int = Field(..., ge=1)
    kernel_size: int = Field(..., ge=1)
    activation: Activation = Activation.RELU
    weights: np.ndarray
    bias: np.ndarray

    @model_validator(mode="after")
    def _shapes(self) -> "ConvLayer":
        if self.kernel_size % 2 == 0:
            raise ShapeError(f"kernel size must be odd, got {self.kernel_size}")
        expected = (self.out_channels, self.in_channels, self.kernel_size)
        if self.weights.shape != expected:
            raise ShapeError(f"weights shape {self.weights.shape} != {expected}")
        if self.bias.shape != (self.out_channels,):
            raise ShapeError(f"bias shape {self.bias.shape} != ({self.out_channels},)")
        return self

    @property
    def param_count(self) -> int:
        return self.out_channels * self.in_channels * self.kernel_size + self.out_channels

    def with_params(self, weights: np.ndarray, bias: np.ndarray) -> "ConvLayer":
        return ConvLayer(
            in_channels=self.in_channels,
            out_channels=self.out_channels,
            kernel_size=self.kernel_size,
            activation=self.activation,
            weights=weights,
            bias=bias,
        )

    def describe(self) -> Dict[str, Any]:
        return {
            "in_channels": self.in_channels,
            "out_channels": self.out_channels,
            "kernel_size": self.kernel_size,
            "activation": self.activation.value,
        }


class ModelParams(BaseModel):
    """All trainable tensors of the segmenter, input layer first."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    layers: List[ConvLayer]

    @model_validator(mode="after")
    def _chain(self) -> "ModelParams":
        if not self.layers:
            raise ShapeError("a model needs at least one layer")
        if self.layers[0].in_channels != 1:
            raise ShapeError("the first layer must take a single input channel")
        last = self.layers[-1]
        if last.out_channels != N_CLASSES or last.kernel_size != 1:
            raise ShapeError(f"the last layer must be pointwise with {N_CLASSES} outputs")
        if last.activation is not Activation.NONE:
            raise ShapeError("the last layer must not have an activation")
        for i, (prev, cur) in enumerate(zip(self.layers, self.layers[1:]), start=2):
            if prev.out_channels != cur.in_channels:
                raise ShapeError(
                    f"layer {i} expects {cur.in_channels} channels, layer {i - 1} gives {prev.out_channels}"
                )
        return self

    @property
    def param_count(self) -> int:
        return sum(layer.param_count for layer in self.layers)

    @property
    def dtype(self) -> np.dtype:
        return self.layers[0].weights.dtype

    def copy(self) -> "ModelParams":
        return ModelParams(
            layers=[layer.with_params(layer.weights.copy(), layer.bias.copy()) for layer in self.layers]
        )

    def describe(self) -> List[Dict[str, Any]]:
        return [layer.describe() for layer in self.layers]


class ParamSlots(BaseModel):
    """Arrays shaped like one layer's weights and bias (gradients, accumulators)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    weights: np.ndarray
    bias: np.ndarray

    @classmethod
    def zeros_like(cls, layer: ConvLayer) -> "ParamSlots":
        return cls(weights=np.zeros_like(layer.weights), bias=np.zeros_like(layer.bias))


Gradients = List[ParamSlots]


class OptimizerState(BaseModel):
    """RMSProp state: squared-gradient accumulators plus constants."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    learning_rate: float = Field(default=0.001, ge=0)
    rho: float = Field(default=0.9, ge=0, lt=1)
    eps: float = Field(default=1e-8, gt=0)
    step: int = Field(default=0, ge=0)
    accumulators: List[ParamSlots]


def parameter_name(layer_index: int, slot: str) -> str:
    """Human name of a parameter array, e.g. ``layer3.weights`` (1-based)."""
    return f"layer{layer_index + 1}.{slot}"
