# SPDX-License-Identifier: MIT

"""Application settings using Pydantic.

This module defines a :class:`Settings` class based on Pydantic's
``BaseSettings``.  Values are resolved, in decreasing priority, from explicit
keyword arguments (the CLI passes its flags this way), ``ECGSEG_``-prefixed
environment variables, a ``.env`` file and finally a JSON config file named
by ``config_file``.  The domain layers never read settings directly; they
receive the small config objects built by the ``*_config`` helpers below.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, Literal, Optional, Tuple, Type

from pydantic import Field, field_validator, model_validator
from pydantic.fields import FieldInfo
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

from ..domain.common.exceptions import ConfigurationError
from .constants import DEFAULT_LEAD, LEAD_NAMES, SPLIT_TEST_SIZE, SPLIT_TRAIN_SIZE

if TYPE_CHECKING:
    from ..domain.ensemble.models import EnsembleConfig
    from ..domain.evaluate.models import EvaluationConfig
    from ..domain.nnet.models import ArchitectureSpec
    from ..domain.preprocess.models import FilterSpec
    from ..domain.train.models import TrainConfig


class JsonConfigFileSource(PydanticBaseSettingsSource):
    """Read field values from the JSON file named by ``config_file``."""

    def __init__(self, settings_cls: Type[BaseSettings], path: Optional[Path]) -> None:
        super().__init__(settings_cls)
        self.path = path

    def get_field_value(self, field: FieldInfo, field_name: str) -> Tuple[Any, str, bool]:
        return self._values().get(field_name), field_name, False

    def _values(self) -> Dict[str, Any]:
        if self.path is None:
            return {}
        path = Path(self.path)
        if not path.is_file():
            raise ConfigurationError(f"config file not found: {path}")
        with path.open("r", encoding="utf-8") as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise ConfigurationError(f"config file {path} must hold a JSON object")
        return data

    def __call__(self) -> Dict[str, Any]:
        return self._values()


class Settings(BaseSettings):
    """Configuration values for the ECG segmentation toolkit."""

    model_config = SettingsConfigDict(
        env_prefix="ECGSEG_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Application environment
    app_env: Literal["development", "testing", "production"] = "development"

    # Paths
    dataset_dir: Path = Path("./data/ludb")
    output_dir: Path = Path("./runs/default")
    config_file: Optional[Path] = None

    # Reproducibility and execution
    seed: Optional[int] = Field(default=None, ge=0)
    lead: str = DEFAULT_LEAD
    threads: int = Field(default=1, ge=1, le=256)
    deterministic: bool = False

    # Baseline wander removal
    filter_window_1_ms: float = Field(default=200.0, gt=0)
    filter_window_2_ms: float = Field(default=600.0, gt=0)

    # Network architecture: conv widths (first entry is the input lead count)
    conv_channels: Tuple[int, ...] = (1, 16, 16, 32, 32, 32, 32, 32)
    kernel_size: int = Field(default=9, ge=1)

    # Training
    window_seconds: float = Field(default=6.0, gt=0, le=10)
    batch_size: int = Field(default=8, ge=1)
    epochs: int = Field(default=50, ge=1)
    steps_per_epoch: Optional[int] = Field(default=None, ge=1)
    learning_rate: float = Field(default=0.001, ge=0)
    rmsprop_rho: float = Field(default=0.9, ge=0, lt=1)
    rmsprop_eps: float = Field(default=1e-8, gt=0)
    precision: Literal["float64", "float32"] = "float64"
    base_runs: int = Field(default=1, ge=1)

    # Decoding and evaluation
    min_run: int = Field(default=10, ge=1)
    radius_ms: float = Field(default=150.0, gt=0)
    reference_bpm: float = Field(default=70.0, gt=0)
    matching: Literal["optimal", "greedy"] = "optimal"

    # Ensemble
    screen_threshold: float = Field(default=0.99, ge=0, le=1)
    stagnation_retries: int = Field(default=5, ge=0)
    iteration_cap: int = Field(default=50, ge=1)
    outlier_threshold: float = Field(default=0.9, ge=0, le=1)
    ensemble_epochs: Optional[int] = Field(default=None, ge=1)

    # Dataset split
    split_train_size: int = Field(default=SPLIT_TRAIN_SIZE, ge=1)
    split_test_size: int = Field(default=SPLIT_TEST_SIZE, ge=1)

    # Logging configuration
    log_level: str = "INFO"
    log_format: Literal["json", "plain"] = "json"

    @field_validator("lead")
    @classmethod
    def _known_lead(cls, value: str) -> str:
        value = value.lower()
        if value not in LEAD_NAMES:
            raise ValueError(f"unknown lead '{value}', expected one of {', '.join(LEAD_NAMES)}")
        return value

    @model_validator(mode="after")
    def _check_windows(self) -> "Settings":
        from ..domain.preprocess.models import window_samples

        if window_samples(self.filter_window_1_ms) >= window_samples(self.filter_window_2_ms):
            raise ValueError("filter_window_1_ms must give fewer samples than filter_window_2_ms")
        if len(self.conv_channels) < 1 or self.conv_channels[0] != 1:
            raise ValueError("conv_channels must start with a single input channel")
        return self

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        config_path = getattr(init_settings, "init_kwargs", {}).get("config_file")
        if config_path is None:
            config_path = env_settings().get("config_file") or dotenv_settings().get("config_file")
        return (
            init_settings,
            env_settings,
            dotenv_settings,
            JsonConfigFileSource(settings_cls, config_path),
            file_secret_settings,
        )

    def validate_paths(self, *, require_output: bool = False) -> None:
        """Raise :class:`ConfigurationError` for referenced paths that do not exist."""
        missing = []
        if not self.dataset_dir.exists():
            missing.append(f"dataset_dir={self.dataset_dir}")
        if require_output and not self.output_dir.exists():
            missing.append(f"output_dir={self.output_dir}")
        if missing:
            raise ConfigurationError("missing paths: " + ", ".join(missing))

    def effective_seed(self, manifest_seed: Optional[int] = None) -> int:
        if self.seed is not None:
            return self.seed
        return manifest_seed if manifest_seed is not None else 0

    def filter_spec(self) -> "FilterSpec":
        from ..domain.preprocess.models import FilterSpec

        return FilterSpec(window_1_ms=self.filter_window_1_ms, window_2_ms=self.filter_window_2_ms)

    def architecture(self) -> "ArchitectureSpec":
        from ..domain.nnet.models import ArchitectureSpec

        return ArchitectureSpec(conv_channels=self.conv_channels, kernel_size=self.kernel_size)

    def train_config(self, seed: int, checkpoint_path: Optional[Path] = None) -> "TrainConfig":
        from ..domain.train.models import TrainConfig

        return TrainConfig(
            lead=self.lead,
            window_seconds=self.window_seconds,
            batch_size=self.batch_size,
            epochs=self.epochs,
            steps_per_epoch=self.steps_per_epoch,
            seed=seed,
            learning_rate=self.learning_rate,
            rho=self.rmsprop_rho,
            eps=self.rmsprop_eps,
            precision=self.precision,
            architecture=self.architecture(),
            checkpoint_path=checkpoint_path,
            threads=self.threads,
            deterministic=self.deterministic,
        )

    def evaluation_config(self) -> "EvaluationConfig":
        from ..domain.evaluate.models import EvaluationConfig

        return EvaluationConfig(
            radius_ms=self.radius_ms,
            reference_bpm=self.reference_bpm,
            matching=self.matching,
            min_run=self.min_run,
        )

    def ensemble_config(self) -> "EnsembleConfig":
        from ..domain.ensemble.models import EnsembleConfig

        return EnsembleConfig(
            screen_threshold=self.screen_threshold,
            stagnation_retries=self.stagnation_retries,
            iteration_cap=self.iteration_cap,
            outlier_threshold=self.outlier_threshold,
        )

    def default_steps_per_epoch(self, n_train: int) -> int:
        if self.steps_per_epoch is not None:
            return self.steps_per_epoch
        return math.ceil(n_train / self.batch_size) * 4


settings = Settings()  # instantiate default settings at import time
