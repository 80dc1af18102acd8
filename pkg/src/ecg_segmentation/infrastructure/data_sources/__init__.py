# SPDX-License-Identifier: MIT

"""Record sources for the interchange format and the upstream WFDB files."""

from pathlib import Path

from ...domain.common.exceptions import DataNotAvailableError
from .base import BaseRecordSource
from .interchange import InterchangeSource
from .ludb import LudbWfdbSource, waves_from_symbols


def open_source(directory: str | Path) -> BaseRecordSource:
    """Pick the source matching the files found in ``directory``."""
    directory = Path(directory)
    if not directory.is_dir():
        raise DataNotAvailableError(f"source directory not found: {directory}")
    if any(directory.rglob("*.hea")):
        return LudbWfdbSource(directory)
    source = InterchangeSource(directory)
    if not source.patient_ids():
        raise DataNotAvailableError(f"no records in {directory}")
    return source


__all__ = [
    "BaseRecordSource",
    "InterchangeSource",
    "LudbWfdbSource",
    "open_source",
    "waves_from_symbols",
]
