"""Shared fixtures: synthetic twelve-lead records with a regular rhythm."""

from __future__ import annotations

from typing import Callable, List, Sequence

import numpy as np
import pytest

from ecg_segmentation.config.constants import LEAD_NAMES, RECORD_LENGTH, SAMPLING_RATE
from ecg_segmentation.domain.common.models import WaveType
from ecg_segmentation.domain.dataset.models import EcgRecord, WaveAnnotation
from ecg_segmentation.domain.nnet.models import ArchitectureSpec

# one beat every 400 samples (75 BPM); offsets relative to the beat start
P_WAVE = (0, 20, 50)
QRS_WAVE = (80, 95, 120)
T_WAVE = (180, 220, 280)
BEAT_STARTS = tuple(range(100, 4600, 400))
SHAPES = ((WaveType.P, P_WAVE), (WaveType.QRS, QRS_WAVE), (WaveType.T, T_WAVE))


def synthetic_waves(starts: Sequence[int] = BEAT_STARTS) -> List[WaveAnnotation]:
    waves = []
    for b in starts:
        for wave_type, (on, pk, off) in SHAPES:
            waves.append(
                WaveAnnotation(wave_type=wave_type, onset=b + on, peak=b + pk, offset=b + off)
            )
    return waves


def synthetic_signal(
    waves: Sequence[WaveAnnotation], length: int = RECORD_LENGTH, seed: int = 0, noise: float = 0.01
) -> np.ndarray:
    """Gaussian bumps at the wave peaks plus a slow baseline and light noise (mV)."""
    t = np.arange(length, dtype=np.float64)
    amp = {WaveType.P: 0.15, WaveType.QRS: 1.0, WaveType.T: 0.3}
    width = {WaveType.P: 10.0, WaveType.QRS: 5.0, WaveType.T: 20.0}
    x = 0.2 * np.sin(2 * np.pi * t / (SAMPLING_RATE * 4))
    for w in waves:
        x += amp[w.wave_type] * np.exp(-0.5 * ((t - w.peak) / width[w.wave_type]) ** 2)
    return x + np.random.default_rng(seed).normal(0.0, noise, size=length)


def make_record(patient_id: str = "p001", seed: int = 0, shift: int = 0) -> EcgRecord:
    """Valid record with the same rhythm on every lead, annotated on lead ii."""
    waves = synthetic_waves([b + shift for b in BEAT_STARTS])
    base = synthetic_signal(waves, seed=seed)
    leads = {name: base * (1.0 + 0.1 * i) for i, name in enumerate(LEAD_NAMES)}
    return EcgRecord(patient_id=patient_id, leads=leads, annotations={"ii": waves})


@pytest.fixture
def record_factory() -> Callable[..., EcgRecord]:
    return make_record


@pytest.fixture
def synthetic_record() -> EcgRecord:
    return make_record()


@pytest.fixture
def tiny_arch() -> ArchitectureSpec:
    """Three layers, small enough for finite differences and fast training."""
    return ArchitectureSpec(conv_channels=(1, 4, 4), kernel_size=5)
