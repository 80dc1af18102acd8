# SPDX-License-Identifier: MIT

"""Mini-batch RMSProp training of the base network.

Each batch item is a random window of a randomly chosen record (patients are
drawn with replacement); the target is the rasterised annotation of the
training lead over the same window.  No smoothing or other post-processing
sits between the network output and the loss.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ...utils.seeding import derive_rng, derive_seed
from ..common.exceptions import DataValidationError, NonFiniteError
from ..dataset.models import EcgRecord
from ..dataset.records import select_lead
from ..nnet.models import Gradients, ModelParams, ParamSlots
from ..nnet.network import init_model, loss_and_gradients
from ..nnet.optimizer import init_optimizer_state, rmsprop_step
from .models import TrainConfig, TrainProgress, TrainResult
from .sampling import sample_window
from .targets import rasterize_targets

logger = logging.getLogger(__name__)


def _sum_gradients(parts: Sequence[Gradients]) -> Gradients:
    total = [ParamSlots(weights=g.weights.copy(), bias=g.bias.copy()) for g in parts[0]]
    for part in parts[1:]:
        for acc, g in zip(total, part):
            acc.weights += g.weights
            acc.bias += g.bias
    return total


def batch_gradients(
    x: np.ndarray,
    target: np.ndarray,
    model: ModelParams,
    *,
    threads: int = 1,
    deterministic: bool = False,
) -> Tuple[float, Gradients]:
    """Loss and gradients of a batch, optionally fanned out over threads.

    Chunks are reduced by summation.  With ``deterministic`` the reduction
    follows chunk order, otherwise completion order (equal up to rounding).
    """
    steps = x.shape[0] * x.shape[2]
    if threads <= 1 or x.shape[0] == 1:
        return loss_and_gradients(x, target, model, normalizer=steps)

    chunks = [c for c in np.array_split(np.arange(x.shape[0]), threads) if c.size]

    def run(idx: np.ndarray) -> Tuple[float, Gradients]:
        return loss_and_gradients(x[idx], target[idx], model, normalizer=steps)

    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        if deterministic:
            results = list(pool.map(run, chunks))
        else:
            futures = [pool.submit(run, c) for c in chunks]
            results = [f.result() for f in as_completed(futures)]
    return sum(r[0] for r in results), _sum_gradients([r[1] for r in results])


def train_base(
    records: Sequence[EcgRecord],
    config: TrainConfig,
    *,
    resume: Optional[TrainProgress] = None,
    on_epoch: Optional[Callable[[TrainProgress], None]] = None,
) -> TrainResult:
    """Train the segmenter on ``records`` (already baseline-corrected).

    Runs ``epochs * steps_per_epoch`` RMSProp steps and returns the model,
    optimizer state and per-epoch mean losses.  Weights are initialised from
    the ``("init",)`` sub-seed of ``config.seed``; the windows of epoch ``e``
    come from the ``("windows", e)`` sub-seed, so equal configs give equal
    runs.

    Parameters
    ----------
    resume:
        Progress of an interrupted run with the same config; training
        continues after its last finished epoch.
    on_epoch:
        Called with the progress after every finished epoch.

    Raises
    ------
    DataValidationError
        If ``records`` is empty.
    NonFiniteError
        If the loss stops being finite; the message names the step.
    ValueError
        If ``resume`` has more epochs than ``config.epochs``.
    """
    if not records:
        raise DataValidationError("training set is empty")
    if resume is not None and resume.epochs_done > config.epochs:
        raise ValueError(
            f"cannot resume after epoch {resume.epochs_done} of a {config.epochs}-epoch run"
        )
    dtype = np.dtype(config.precision)
    window = config.window_samples

    signals = [np.asarray(select_lead(r, config.lead), dtype=dtype) for r in records]
    targets = [rasterize_targets(r.waves(config.lead), r.length).astype(dtype) for r in records]

    if resume is not None:
        model, state = resume.model, resume.state
        epoch_losses = list(resume.epoch_losses)
        initial_loss: Optional[float] = resume.initial_loss
    else:
        model = init_model(config.architecture, seed=derive_seed(config.seed, "init"), dtype=dtype)
        state = init_optimizer_state(
            model, learning_rate=config.learning_rate, rho=config.rho, eps=config.eps
        )
        epoch_losses = []
        initial_loss = None
    steps_per_epoch = config.resolved_steps(len(records))

    logger.info(
        "Training on %d records, lead %s, epochs %d-%d x %d steps, %d parameters",
        len(records),
        config.lead,
        len(epoch_losses) + 1,
        config.epochs,
        steps_per_epoch,
        model.param_count,
        extra={"records": len(records), "lead": config.lead},
    )

    step_losses: List[float] = []
    for epoch in range(len(epoch_losses) + 1, config.epochs + 1):
        rng = derive_rng(config.seed, "windows", epoch)
        for step in range(1, steps_per_epoch + 1):
            picks = rng.integers(0, len(records), size=config.batch_size)
            x = np.empty((config.batch_size, 1, window), dtype=dtype)
            t = np.empty((config.batch_size, targets[0].shape[0], window), dtype=dtype)
            for b, p in enumerate(picks):
                start = sample_window(signals[p].shape[0], window, rng)
                x[b, 0] = signals[p][start : start + window]
                t[b] = targets[p][:, start : start + window]

            loss, grads = batch_gradients(
                x, t, model, threads=config.threads, deterministic=config.deterministic
            )
            if not math.isfinite(loss):
                raise NonFiniteError(
                    f"non-finite loss at epoch {epoch}, step {step} "
                    f"(global step {state.step + 1})"
                )
            model, state = rmsprop_step(model, grads, state)
            step_losses.append(loss)
            if initial_loss is None:
                initial_loss = loss

        mean_loss = float(np.mean(step_losses[-steps_per_epoch:]))
        epoch_losses.append(mean_loss)
        logger.info(
            "Epoch %d/%d mean loss %.5f",
            epoch,
            config.epochs,
            mean_loss,
            extra={"epoch": epoch, "loss": mean_loss},
        )
        if on_epoch is not None:
            assert initial_loss is not None
            on_epoch(
                TrainProgress(
                    model=model,
                    state=state,
                    epoch_losses=list(epoch_losses),
                    initial_loss=initial_loss,
                )
            )

    assert initial_loss is not None
    return TrainResult(
        model=model,
        state=state,
        config=config,
        epoch_losses=epoch_losses,
        step_losses=step_losses,
        initial_loss=initial_loss,
    )
