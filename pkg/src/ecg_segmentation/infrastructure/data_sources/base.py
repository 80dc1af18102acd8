# SPDX-License-Identifier: MIT

"""Abstract base class for record sources."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Iterator, List

from ...domain.dataset.models import EcgRecord


class BaseRecordSource(ABC):
    """Defines the interface for record sources.

    Implementations read patient records from a directory in some on-disk
    format (the interchange JSON files, or the published WFDB distribution
    of the Lobachevsky University database) and hand them to the domain as
    :class:`EcgRecord` instances.
    """

    @abstractmethod
    def patient_ids(self) -> List[str]:
        """Identifiers of every record the source holds, in a stable order."""

    @abstractmethod
    def get_record(self, patient_id: str) -> EcgRecord:
        """Read one record.

        Raises
        ------
        DataNotAvailableError
            If the source has no record with this identifier.
        """

    def __iter__(self) -> Iterator[EcgRecord]:
        for patient_id in self.patient_ids():
            yield self.get_record(patient_id)

    def __len__(self) -> int:
        return len(self.patient_ids())
