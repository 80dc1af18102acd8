# SPDX-License-Identifier: MIT

"""Service for importing, preprocessing and splitting the dataset."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from ..config.settings import Settings, settings
from ..domain.common.exceptions import DataNotAvailableError, DataValidationError
from ..domain.dataset.models import DatasetManifest, DatasetSplit, EcgRecord, ManifestEntry
from ..domain.dataset.records import split_dataset, validate_record
from ..domain.preprocess.filters import preprocess_record
from ..infrastructure.data_sources import open_source
from ..infrastructure.persistence.records import (
    MANIFEST_NAME,
    load_dataset,
    read_manifest,
    read_split,
    write_manifest,
    write_record,
    write_split,
)

logger = logging.getLogger(__name__)

PREPROCESSED_DIR = "preprocessed"


def write_dataset(
    records: Sequence[EcgRecord], directory: str | Path, *, seed: int = 0, lead: str | None = None
) -> DatasetManifest:
    """Write ``records`` as interchange files plus their manifest."""
    directory = Path(directory)
    entries = []
    for record in records:
        name = f"{record.patient_id}.json"
        write_record(record, directory / name)
        entries.append(ManifestEntry(patient_id=record.patient_id, path=name))
    manifest = DatasetManifest(seed=seed, lead=lead, records=entries)
    write_manifest(manifest, directory)
    return manifest


class DatasetPreparationService:
    """Import upstream records, remove baseline wander and split patients."""

    def __init__(self, cfg: Settings | None = None) -> None:
        self.cfg = cfg or settings

    @property
    def preprocessed_dir(self) -> Path:
        return self.cfg.output_dir / PREPROCESSED_DIR

    def import_records(self, src: str | Path, dst: str | Path) -> int:
        """Convert every record under ``src`` into interchange files in ``dst``.

        Nothing is written unless every record is valid; the raised error
        lists the violations of every rejected record by patient id.
        """
        source = open_source(src)
        records: List[EcgRecord] = []
        problems: Dict[str, List[str]] = {}
        for patient_id in source.patient_ids():
            try:
                records.append(validate_record(source.get_record(patient_id), source=patient_id))
            except DataValidationError as exc:
                problems[patient_id] = exc.violations
        if problems:
            lines = [f"record {pid}: {v}" for pid, found in problems.items() for v in found]
            raise DataValidationError(lines, source=str(src))
        if not records:
            raise DataNotAvailableError(f"no records in {src}")

        write_dataset(records, dst, seed=self.cfg.seed or 0, lead=self.cfg.lead)
        logger.info("Imported %d records into %s", len(records), dst, extra={"records": len(records)})
        return len(records)

    def load_raw(self) -> Tuple[DatasetManifest, List[EcgRecord]]:
        return load_dataset(self.cfg.dataset_dir)

    def manifest_seed(self) -> Optional[int]:
        """Seed stored with the imported dataset, without loading its records."""
        if not (self.cfg.dataset_dir / MANIFEST_NAME).exists():
            return None
        return read_manifest(self.cfg.dataset_dir).seed

    def preprocess(self, records: Sequence[EcgRecord]) -> List[EcgRecord]:
        """Baseline-correct every lead of every record and store the result."""
        spec = self.cfg.filter_spec()
        logger.info(
            "Removing baseline wander with %d/%d-sample median filters",
            spec.window_1,
            spec.window_2,
            extra={"records": len(records)},
        )
        corrected = [preprocess_record(r, spec, threads=self.cfg.threads) for r in records]
        write_dataset(corrected, self.preprocessed_dir, lead=self.cfg.lead)
        return corrected

    def load_preprocessed(self) -> List[EcgRecord]:
        if not (self.preprocessed_dir / "manifest.json").exists():
            raise DataNotAvailableError(f"no preprocessed records in {self.preprocessed_dir}")
        return load_dataset(self.preprocessed_dir)[1]

    def split(self, patient_ids: Sequence[str], seed: int) -> DatasetSplit:
        split = split_dataset(
            patient_ids,
            seed,
            train_size=self.cfg.split_train_size,
            test_size=self.cfg.split_test_size,
        )
        write_split(split, self.cfg.output_dir)
        logger.info(
            "Split %d patients into %d train / %d test",
            len(patient_ids),
            len(split.train_ids),
            len(split.test_ids),
            extra={"seed": seed},
        )
        return split

    def load_split(self) -> DatasetSplit:
        return read_split(self.cfg.output_dir)
