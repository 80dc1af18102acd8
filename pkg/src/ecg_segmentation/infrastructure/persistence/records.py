# SPDX-License-Identifier: MIT

"""Interchange record files and the dataset manifest.

One JSON document per patient::

    {"patient_id": "1", "fs": 500,
     "leads": {"i": [...], "ii": [...], ...},
     "annotations": {"ii": [["p", 120, 140, 170], ["qrs", ...], ...]}}

Floats are written with their shortest round-trip representation, so
``parse_record(write_record(r))`` reproduces ``r`` bit for bit.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, StrictFloat, StrictInt, StrictStr, ValidationError

from ...domain.common.exceptions import DataNotAvailableError, RecordParseError
from ...domain.common.models import WaveType
from ...domain.dataset.models import DatasetManifest, DatasetSplit, EcgRecord, WaveAnnotation
from ...domain.dataset.records import validate_record

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
SPLIT_NAME = "split.json"


class _RecordDocument(BaseModel):
    """Schema of an interchange file; field errors become :class:`RecordParseError`."""

    model_config = ConfigDict(extra="forbid")

    # numbers must be JSON numbers; "0.5" or true are rejected
    patient_id: StrictStr
    fs: StrictInt
    leads: Dict[str, List[StrictFloat]]
    annotations: Dict[str, List[Tuple[WaveType, StrictInt, StrictInt, StrictInt]]] = {}


def _field_of(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first["loc"]) or "<document>"


def record_path(directory: str | Path, patient_id: str) -> Path:
    return Path(directory) / f"{patient_id}.json"


def parse_record(path: str | Path) -> EcgRecord:
    """Read and validate one interchange file.

    Raises
    ------
    RecordParseError
        If the file is not JSON or a field has the wrong type.
    DataValidationError
        If the record breaks a dataset invariant; every violation is listed.
    """
    path = Path(path)
    if not path.exists():
        raise DataNotAvailableError(f"record file not found: {path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise RecordParseError("<document>", f"invalid JSON ({exc.msg})", source=str(path)) from exc
    try:
        doc = _RecordDocument.model_validate(payload)
    except ValidationError as exc:
        raise RecordParseError(_field_of(exc), exc.errors()[0]["msg"], source=str(path)) from exc

    record = EcgRecord(
        patient_id=doc.patient_id,
        sampling_rate=doc.fs,
        leads=doc.leads,
        annotations={
            lead: [WaveAnnotation(wave_type=t, onset=a, peak=b, offset=c) for t, a, b, c in rows]
            for lead, rows in doc.annotations.items()
        },
    )
    return validate_record(record, source=str(path))


def record_to_payload(record: EcgRecord) -> Dict[str, object]:
    return {
        "patient_id": record.patient_id,
        "fs": record.sampling_rate,
        "leads": {name: samples.tolist() for name, samples in record.leads.items()},
        "annotations": {
            lead: [w.as_row() for w in record.annotations[lead]]
            for lead in sorted(record.annotations)
        },
    }


def write_record(record: EcgRecord, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(record_to_payload(record)), encoding="utf-8")
    return path


def write_manifest(manifest: DatasetManifest, directory: str | Path) -> Path:
    path = Path(directory) / MANIFEST_NAME
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(manifest.model_dump_json(indent=2), encoding="utf-8")
    return path


def read_manifest(directory: str | Path) -> DatasetManifest:
    path = Path(directory) / MANIFEST_NAME
    if not path.exists():
        raise DataNotAvailableError(f"no dataset manifest in {directory}")
    try:
        return DatasetManifest.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as exc:
        raise RecordParseError(_field_of(exc), exc.errors()[0]["msg"], source=str(path)) from exc


def load_dataset(directory: str | Path) -> Tuple[DatasetManifest, List[EcgRecord]]:
    """Manifest plus every record it lists, in manifest order."""
    directory = Path(directory)
    manifest = read_manifest(directory)
    records = [parse_record(directory / entry.path) for entry in manifest.records]
    logger.info("Loaded %d records from %s", len(records), directory, extra={"records": len(records)})
    return manifest, records


def write_split(split: DatasetSplit, directory: str | Path) -> Path:
    path = Path(directory) / SPLIT_NAME
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(split.model_dump_json(indent=2), encoding="utf-8")
    return path


def read_split(directory: str | Path) -> DatasetSplit:
    path = Path(directory) / SPLIT_NAME
    if not path.exists():
        raise DataNotAvailableError(f"no split file in {directory}")
    return DatasetSplit.model_validate_json(path.read_text(encoding="utf-8"))
