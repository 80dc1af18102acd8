# SPDX-License-Identifier: MIT

"""Adapter for the WFDB distribution of the Lobachevsky University database.

Each record ``<n>`` has a ``<n>.hea`` header, the twelve-lead signal and one
annotation file per lead whose extension is the lead name (``<n>.ii``).
A wave is annotated as the symbol triple ``(`` / peak / ``)`` with the peak
symbol ``p`` (P wave), ``N`` (QRS) or ``t`` (T wave).
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List

import numpy as np
import wfdb  # type: ignore[import]

from ...domain.common.exceptions import DataNotAvailableError, DataValidationError, DomainError
from ...domain.common.models import WaveType
from ...domain.dataset.models import EcgRecord, WaveAnnotation
from .base import BaseRecordSource

logger = logging.getLogger(__name__)

PEAK_SYMBOLS: Dict[str, WaveType] = {"p": WaveType.P, "N": WaveType.QRS, "t": WaveType.T}


def waves_from_symbols(samples: np.ndarray, symbols: List[str]) -> List[WaveAnnotation]:
    """Wave triples of one annotation file; peaks without both brackets are skipped."""
    waves: List[WaveAnnotation] = []
    for i, symbol in enumerate(symbols):
        wave_type = PEAK_SYMBOLS.get(symbol)
        if wave_type is None:
            continue
        if i == 0 or i + 1 >= len(symbols) or symbols[i - 1] != "(" or symbols[i + 1] != ")":
            logger.debug("Skipping unbracketed %s peak at sample %d", wave_type.value, samples[i])
            continue
        waves.append(
            WaveAnnotation(
                wave_type=wave_type,
                onset=int(samples[i - 1]),
                peak=int(samples[i]),
                offset=int(samples[i + 1]),
            )
        )
    return waves


class LudbWfdbSource(BaseRecordSource):
    """Records of a local copy of the WFDB distribution under ``directory``."""

    def __init__(self, directory: str | Path) -> None:
        self.directory = Path(directory)
        self._headers: Dict[str, Path] | None = None

    def _index(self) -> Dict[str, Path]:
        if self._headers is None:
            headers = sorted(self.directory.rglob("*.hea"), key=lambda p: (len(p.stem), p.stem))
            self._headers = {p.stem: p for p in headers}
        return self._headers

    def patient_ids(self) -> List[str]:
        return list(self._index())

    def get_record(self, patient_id: str) -> EcgRecord:
        header = self._index().get(patient_id)
        if header is None:
            raise DataNotAvailableError(f"no WFDB record '{patient_id}' in {self.directory}")
        base = str(header.with_suffix(""))
        try:
            signals, fields = wfdb.rdsamp(base)
            names = [str(n).lower() for n in fields["sig_name"]]
            leads = {
                name: np.asarray(signals[:, i], dtype=np.float64) for i, name in enumerate(names)
            }

            annotations: Dict[str, List[WaveAnnotation]] = {}
            for name in names:
                if not Path(f"{base}.{name}").exists():
                    continue
                ann = wfdb.rdann(base, name)
                annotations[name] = waves_from_symbols(np.asarray(ann.sample), list(ann.symbol))
        except DomainError:
            raise
        except Exception as exc:  # wfdb has no common error base
            raise DataValidationError(
                f"unreadable WFDB files ({type(exc).__name__}: {exc})", source=patient_id
            ) from exc

        return EcgRecord(
            patient_id=patient_id,
            sampling_rate=int(fields["fs"]),
            leads=leads,
            annotations=annotations,
        )
