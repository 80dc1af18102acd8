# SPDX-License-Identifier: MIT

"""Service training the base networks and ensemble members.

A base run saves ``checkpoints/base_run<r>.partial.npz`` and rewrites
``loss_base_run<r>.csv`` after every epoch.  When the run finishes, the
final checkpoint replaces the partial one.  A run that finds a partial
checkpoint of the same seed continues after its last epoch.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from ..config.settings import Settings, settings
from ..domain.common.exceptions import DataNotAvailableError
from ..domain.dataset.models import EcgRecord
from ..domain.nnet.models import ModelParams
from ..domain.train.models import TrainConfig, TrainProgress, TrainResult
from ..domain.train.trainer import train_base
from ..infrastructure.persistence.checkpoints import load_checkpoint, save_checkpoint
from ..infrastructure.persistence.repositories import ReportRepository
from ..utils.seeding import derive_seed

logger = logging.getLogger(__name__)

CHECKPOINT_DIR = "checkpoints"


def run_seed(seed: int, run: int) -> int:
    """Training seed of base run ``run``; run 0 uses the global seed itself."""
    return seed if run == 0 else derive_seed(seed, "run", run)


def partial_path(checkpoint: Path) -> Path:
    """Where the epoch-by-epoch progress of ``checkpoint`` is kept."""
    return checkpoint.with_name(f"{checkpoint.stem}.partial{checkpoint.suffix}")


class ModelTrainingService:
    """Train networks and keep their checkpoints under ``output_dir``."""

    def __init__(self, cfg: Settings | None = None, reports: ReportRepository | None = None) -> None:
        self.cfg = cfg or settings
        self.reports = reports or ReportRepository(self.cfg.output_dir)

    @property
    def checkpoint_dir(self) -> Path:
        return self.cfg.output_dir / CHECKPOINT_DIR

    def base_checkpoint(self, run: int = 0) -> Path:
        return self.checkpoint_dir / f"base_run{run}.npz"

    def member_checkpoint(self, index: int) -> Path:
        return self.checkpoint_dir / f"member{index}.npz"

    @staticmethod
    def loss_key(run: int) -> str:
        return f"loss_base_run{run}"

    def train_base_runs(self, records: Sequence[EcgRecord], seed: int) -> List[TrainResult]:
        """Train ``base_runs`` independently seeded base networks and save each."""
        results = []
        for run in range(self.cfg.base_runs):
            config = self.cfg.train_config(run_seed(seed, run), checkpoint_path=self.base_checkpoint(run))
            result = self.train_resumable(
                records, config, loss_key=self.loss_key(run), meta={"kind": "base", "run": run}
            )
            logger.info(
                "Base run %d finished with loss %.5f",
                run,
                result.final_loss,
                extra={"run": run, "loss": result.final_loss},
            )
            results.append(result)
        return results

    def train_resumable(
        self,
        records: Sequence[EcgRecord],
        config: TrainConfig,
        *,
        loss_key: str,
        meta: Dict[str, Any],
    ) -> TrainResult:
        """Train with per-epoch progress checkpoints and a loss log.

        Raises
        ------
        ValueError
            If ``config`` has no ``checkpoint_path``.
        """
        if config.checkpoint_path is None:
            raise ValueError("resumable training needs a checkpoint path")
        final = Path(config.checkpoint_path)
        partial = partial_path(final)
        run_meta = {**meta, "seed": config.seed, "lead": config.lead}

        def save_progress(progress: TrainProgress) -> None:
            save_checkpoint(
                partial,
                progress.model,
                progress.state,
                meta={
                    **run_meta,
                    "epoch_losses": progress.epoch_losses,
                    "initial_loss": progress.initial_loss,
                },
            )
            self.reports.save_loss_log(loss_key, progress.epoch_losses)

        result = train_base(
            records, config, resume=self.load_progress(partial, config), on_epoch=save_progress
        )
        save_checkpoint(
            final,
            result.model,
            result.state,
            meta={**run_meta, "epoch_losses": result.epoch_losses, "initial_loss": result.initial_loss},
        )
        self.reports.save_loss_log(loss_key, result.epoch_losses)
        partial.unlink(missing_ok=True)
        return result

    def load_progress(self, path: Path, config: TrainConfig) -> Optional[TrainProgress]:
        """Progress saved at ``path`` for the same seed, if any."""
        if not path.exists():
            return None
        model, state, meta = load_checkpoint(path)
        if state is None or meta.get("seed") != config.seed or meta.get("lead") != config.lead:
            logger.warning("Ignoring progress checkpoint %s of another run", path)
            return None
        if len(meta["epoch_losses"]) > config.epochs:
            logger.warning("Ignoring progress checkpoint %s beyond %d epochs", path, config.epochs)
            return None
        progress = TrainProgress(
            model=model,
            state=state,
            epoch_losses=meta["epoch_losses"],
            initial_loss=meta["initial_loss"],
        )
        logger.info(
            "Resuming %s after epoch %d",
            path.name,
            progress.epochs_done,
            extra={"epoch": progress.epochs_done},
        )
        return progress

    def load_base(self, run: int = 0) -> ModelParams:
        return load_checkpoint(self.base_checkpoint(run))[0]

    def load_base_runs(self) -> List[ModelParams]:
        return [self.load_base(run) for run in range(self.cfg.base_runs)]

    def load_loss_log(self, run: int = 0) -> List[float]:
        if not self.reports.exists(self.loss_key(run)):
            raise DataNotAvailableError(f"no loss log for base run {run}")
        return self.reports.load_loss_log(self.loss_key(run))

    def train_member(
        self, records: Sequence[EcgRecord], seed: int, *, steps_per_epoch: Optional[int] = None
    ) -> ModelParams:
        """Train one ensemble member from scratch on ``records``."""
        config = self.cfg.train_config(seed)
        update: Dict[str, Any] = {"steps_per_epoch": steps_per_epoch or config.steps_per_epoch}
        if self.cfg.ensemble_epochs is not None:
            update["epochs"] = self.cfg.ensemble_epochs
        return train_base(records, config.model_copy(update=update)).model

    def save_member(self, index: int, model: ModelParams, meta: dict) -> Path:
        return save_checkpoint(self.member_checkpoint(index), model, meta={"kind": "member", **meta})

    def load_member(self, path: str | Path) -> ModelParams:
        return load_checkpoint(path)[0]
