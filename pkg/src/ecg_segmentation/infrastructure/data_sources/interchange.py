# SPDX-License-Identifier: MIT

"""Source reading already-converted interchange files."""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List

from ...domain.common.exceptions import DataNotAvailableError
from ...domain.dataset.models import EcgRecord
from ..persistence.records import MANIFEST_NAME, SPLIT_NAME, parse_record, read_manifest
from .base import BaseRecordSource


class InterchangeSource(BaseRecordSource):
    """Interchange JSON files in ``directory``.

    The manifest decides the record list when present; otherwise every
    ``*.json`` file other than the manifest and split files is a record.
    """

    def __init__(self, directory: str | Path) -> None:
        self.directory = Path(directory)
        self._paths: Dict[str, Path] | None = None

    def _index(self) -> Dict[str, Path]:
        if self._paths is None:
            if (self.directory / MANIFEST_NAME).exists():
                manifest = read_manifest(self.directory)
                self._paths = {e.patient_id: self.directory / e.path for e in manifest.records}
            else:
                skip = {MANIFEST_NAME, SPLIT_NAME}
                self._paths = {
                    p.stem: p for p in sorted(self.directory.glob("*.json")) if p.name not in skip
                }
        return self._paths

    def patient_ids(self) -> List[str]:
        return list(self._index())

    def get_record(self, patient_id: str) -> EcgRecord:
        path = self._index().get(patient_id)
        if path is None:
            raise DataNotAvailableError(f"no record '{patient_id}' in {self.directory}")
        return parse_record(path)
