# SPDX-License-Identifier: MIT

"""Dataset domain models."""

from __future__ import annotations

from typing import Dict, List, Mapping

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ...config.constants import SAMPLING_RATE
from ..common.models import SplitTag, WaveType


class WaveAnnotation(BaseModel):
    """One expert-annotated wave: onset, peak and offset sample indices."""

    model_config = ConfigDict(frozen=True)

    wave_type: WaveType
    onset: int = Field(..., description="First sample of the wave")
    peak: int = Field(..., description="Sample of the wave's peak")
    offset: int = Field(..., description="Last sample of the wave (inclusive)")

    def as_row(self) -> list:
        """Interchange form ``[type, onset, peak, offset]``."""
        return [self.wave_type.value, self.onset, self.peak, self.offset]


def _readonly(values: object) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True)
    arr.flags.writeable = False
    return arr


class EcgRecord(BaseModel):
    """One patient: twelve leads of millivolt samples plus expert annotation.

    Records are immutable once built; lead arrays are read-only so a record
    can be shared between threads.  Construction does not enforce the
    dataset invariants, :func:`record_violations` does, so that a parser can
    report every problem of a file at once.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    patient_id: str
    sampling_rate: int = SAMPLING_RATE
    leads: Dict[str, np.ndarray]
    annotations: Dict[str, List[WaveAnnotation]] = Field(default_factory=dict)

    @field_validator("leads", mode="before")
    @classmethod
    def _as_arrays(cls, value: Mapping[str, object]) -> Dict[str, np.ndarray]:
        return {str(name).lower(): _readonly(samples) for name, samples in value.items()}

    @field_validator("annotations", mode="before")
    @classmethod
    def _lower_leads(cls, value: Mapping[str, object]) -> Dict[str, object]:
        return {str(name).lower(): waves for name, waves in value.items()}

    @property
    def length(self) -> int:
        return len(next(iter(self.leads.values()))) if self.leads else 0

    def waves(self, lead: str, wave_type: WaveType | None = None) -> List[WaveAnnotation]:
        """Annotations of ``lead`` (optionally one wave type) ordered by onset."""
        waves = self.annotations.get(lead, [])
        if wave_type is not None:
            waves = [w for w in waves if w.wave_type == wave_type]
        return sorted(waves, key=lambda w: (w.onset, w.wave_type.value))

    def replace_leads(self, leads: Mapping[str, np.ndarray]) -> "EcgRecord":
        """Copy of the record with new lead samples and the same annotation."""
        return EcgRecord(
            patient_id=self.patient_id,
            sampling_rate=self.sampling_rate,
            leads=dict(leads),
            annotations=self.annotations,
        )

    def same_as(self, other: "EcgRecord") -> bool:
        """Bit-exact equality of ids, samples and annotation."""
        if (self.patient_id, self.sampling_rate) != (other.patient_id, other.sampling_rate):
            return False
        if self.leads.keys() != other.leads.keys():
            return False
        for name, samples in self.leads.items():
            theirs = other.leads[name]
            if samples.shape != theirs.shape or samples.tobytes() != theirs.tobytes():
                return False
        return self.annotations == other.annotations


class DatasetSplit(BaseModel):
    """Patient-level train/test partition."""

    model_config = ConfigDict(frozen=True)

    train_ids: List[str]
    test_ids: List[str]
    seed: int = Field(..., ge=0)

    def tag(self, patient_id: str) -> SplitTag:
        if patient_id in self.train_ids:
            return SplitTag.TRAIN
        if patient_id in self.test_ids:
            return SplitTag.TEST
        raise KeyError(patient_id)


class ManifestEntry(BaseModel):
    patient_id: str
    path: str


class DatasetManifest(BaseModel):
    """Index of an interchange dataset directory."""

    seed: int = Field(default=0, ge=0)
    lead: str | None = None
    records: List[ManifestEntry] = Field(default_factory=list)

    @property
    def patient_ids(self) -> List[str]:
        return [entry.patient_id for entry in self.records]
