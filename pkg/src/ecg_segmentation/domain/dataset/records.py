# SPDX-License-Identifier: MIT

"""Record validation, lead selection and the patient split."""

from __future__ import annotations

from itertools import groupby
from typing import Iterable, List, Sequence

import numpy as np

from ...config.constants import (
    DEFAULT_LEAD,
    LEAD_NAMES,
    RECORD_LENGTH,
    SAMPLING_RATE,
    SPLIT_TEST_SIZE,
    SPLIT_TRAIN_SIZE,
)
from ..common.exceptions import DataNotAvailableError, DataValidationError
from .models import DatasetSplit, EcgRecord, WaveAnnotation


def record_violations(record: EcgRecord, *, length: int = RECORD_LENGTH) -> List[str]:
    """Return one message per violated record invariant (empty when valid)."""
    problems: List[str] = []
    if record.sampling_rate != SAMPLING_RATE:
        problems.append(f"sampling rate {record.sampling_rate} != {SAMPLING_RATE}")

    names = set(record.leads)
    missing = [name for name in LEAD_NAMES if name not in names]
    unknown = sorted(names - set(LEAD_NAMES))
    if missing:
        problems.append(f"missing leads: {', '.join(missing)}")
    if unknown:
        problems.append(f"unknown leads: {', '.join(unknown)}")

    for name, samples in record.leads.items():
        if samples.ndim != 1 or samples.shape[0] != length:
            problems.append(f"lead '{name}': lead length {samples.shape[0]} != {length}")
        if not np.all(np.isfinite(samples)):
            problems.append(f"lead '{name}': non-finite samples")

    for lead, waves in record.annotations.items():
        if lead not in LEAD_NAMES:
            problems.append(f"annotations for unknown lead '{lead}'")
        problems.extend(_wave_violations(lead, waves, length))
    return problems


def _wave_violations(lead: str, waves: Sequence[WaveAnnotation], length: int) -> List[str]:
    problems: List[str] = []
    for i, wave in enumerate(waves):
        where = f"lead '{lead}' {wave.wave_type.value.upper()} wave #{i}"
        for label in ("onset", "peak", "offset"):
            index = getattr(wave, label)
            if not 0 <= index < length:
                problems.append(f"{where}: {label} {index} outside [0, {length})")
        if wave.onset > wave.peak:
            problems.append(f"{where}: onset ≤ peak violated (onset={wave.onset}, peak={wave.peak})")
        if wave.peak > wave.offset:
            problems.append(
                f"{where}: peak ≤ offset violated (peak={wave.peak}, offset={wave.offset})"
            )

    by_type = sorted(waves, key=lambda w: (w.wave_type.value, w.onset))
    for wave_type, group in groupby(by_type, key=lambda w: w.wave_type):
        ordered = list(group)
        for prev, cur in zip(ordered, ordered[1:]):
            if cur.onset <= prev.offset:
                problems.append(
                    f"lead '{lead}' {wave_type.value.upper()} waves overlap: "
                    f"[{prev.onset}, {prev.offset}] and [{cur.onset}, {cur.offset}]"
                )
    return problems


def validate_record(record: EcgRecord, *, source: str | None = None) -> EcgRecord:
    """Return ``record`` unchanged or raise listing every violation."""
    problems = record_violations(record)
    if problems:
        raise DataValidationError(problems, source=source or record.patient_id)
    return record


def select_lead(record: EcgRecord, lead: str = DEFAULT_LEAD) -> np.ndarray:
    """Return the samples of one lead.

    Raises
    ------
    DataNotAvailableError
        If ``lead`` is not a lead of the record.
    """
    name = lead.lower()
    try:
        return record.leads[name]
    except KeyError:
        raise DataNotAvailableError(
            f"record {record.patient_id} has no lead '{lead}'"
        ) from None


def split_dataset(
    ids: Iterable[str],
    seed: int,
    *,
    train_size: int = SPLIT_TRAIN_SIZE,
    test_size: int = SPLIT_TEST_SIZE,
) -> DatasetSplit:
    """Partition patient ids into train and test parts.

    The result depends only on the set of ids and ``seed``: ids are sorted
    before a seeded permutation, so input order does not matter.  The
    population must be exactly ``train_size + test_size`` (134 + 66).
    """
    ids = list(ids)
    unique = sorted(set(ids))
    if len(unique) != len(ids):
        raise DataValidationError("patient ids are not distinct")
    expected = train_size + test_size
    if len(unique) != expected:
        raise DataValidationError(
            f"split needs exactly {expected} patients ({train_size}/{test_size}), got {len(unique)}"
        )
    order = np.random.default_rng(seed).permutation(len(unique))
    shuffled = [unique[i] for i in order]
    return DatasetSplit(
        train_ids=sorted(shuffled[:train_size]),
        test_ids=sorted(shuffled[train_size:]),
        seed=seed,
    )
