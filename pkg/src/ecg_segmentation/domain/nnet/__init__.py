# SPDX-License-Identifier: MIT

"""Network exports.

The fixed 1-D convolutional segmenter with its hand-derived gradients and the
RMSProp optimizer.
"""

from .models import (
    Activation,
    ArchitectureSpec,
    ConvLayer,
    Gradients,
    ModelParams,
    OptimizerState,
    ParamSlots,
    parameter_name,
)
from .layers import conv1d_forward, softmax
from .network import (
    backward,
    cross_entropy_loss,
    forward,
    init_model,
    loss_and_gradients,
    param_count,
)
from .optimizer import init_optimizer_state, rmsprop_step

__all__ = [
    "Activation",
    "ArchitectureSpec",
    "ConvLayer",
    "Gradients",
    "ModelParams",
    "OptimizerState",
    "ParamSlots",
    "parameter_name",
    "conv1d_forward",
    "softmax",
    "backward",
    "cross_entropy_loss",
    "forward",
    "init_model",
    "loss_and_gradients",
    "param_count",
    "init_optimizer_state",
    "rmsprop_step",
]
