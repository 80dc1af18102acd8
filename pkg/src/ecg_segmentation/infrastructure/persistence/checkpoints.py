# SPDX-License-Identifier: MIT

"""Model checkpoints as ``.npz`` containers.

Arrays are stored as ``layer{i}.weights`` / ``layer{i}.bias`` (1-based) and
the RMSProp accumulators as ``acc.layer{i}.weights`` / ``acc.layer{i}.bias``.
A ``meta`` entry holds a JSON document with the layer geometry, optimizer
constants, step count and any caller-supplied fields.  Files are read with
``allow_pickle=False``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ...domain.common.exceptions import DataNotAvailableError, ShapeError
from ...domain.nnet.models import (
    Activation,
    ConvLayer,
    ModelParams,
    OptimizerState,
    ParamSlots,
    parameter_name,
)
from ...utils.sanitization import to_serializable


def save_checkpoint(
    path: str | Path,
    model: ModelParams,
    state: Optional[OptimizerState] = None,
    meta: Optional[Dict[str, Any]] = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    arrays: Dict[str, np.ndarray] = {}
    for i, layer in enumerate(model.layers):
        arrays[parameter_name(i, "weights")] = layer.weights
        arrays[parameter_name(i, "bias")] = layer.bias
    document: Dict[str, Any] = {
        "layers": model.describe(),
        "param_count": model.param_count,
        "dtype": str(model.dtype),
        **(meta or {}),
    }
    if state is not None:
        for i, acc in enumerate(state.accumulators):
            arrays["acc." + parameter_name(i, "weights")] = acc.weights
            arrays["acc." + parameter_name(i, "bias")] = acc.bias
        document["optimizer"] = {
            "learning_rate": state.learning_rate,
            "rho": state.rho,
            "eps": state.eps,
            "step": state.step,
        }
    arrays["meta"] = np.array(json.dumps(to_serializable(document), sort_keys=True))
    with path.open("wb") as fh:
        np.savez(fh, **arrays)
    return path


def load_checkpoint(path: str | Path) -> Tuple[ModelParams, Optional[OptimizerState], Dict[str, Any]]:
    """Model, optimizer state (if saved) and meta document of a checkpoint."""
    path = Path(path)
    if not path.exists():
        raise DataNotAvailableError(f"checkpoint not found: {path}")
    with np.load(path, allow_pickle=False) as data:
        meta = json.loads(str(data["meta"]))
        layers = []
        for i, spec in enumerate(meta["layers"]):
            layers.append(
                ConvLayer(
                    in_channels=spec["in_channels"],
                    out_channels=spec["out_channels"],
                    kernel_size=spec["kernel_size"],
                    activation=Activation(spec["activation"]),
                    weights=data[parameter_name(i, "weights")],
                    bias=data[parameter_name(i, "bias")],
                )
            )
        model = ModelParams(layers=layers)
        if model.param_count != meta["param_count"]:
            raise ShapeError(f"{path}: {model.param_count} parameters, meta says {meta['param_count']}")

        state = None
        if "optimizer" in meta:
            accumulators = [
                ParamSlots(
                    weights=data["acc." + parameter_name(i, "weights")],
                    bias=data["acc." + parameter_name(i, "bias")],
                )
                for i in range(len(layers))
            ]
            state = OptimizerState(accumulators=accumulators, **meta["optimizer"])
    return model, state, meta
