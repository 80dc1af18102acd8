# SPDX-License-Identifier: MIT

"""Repository abstractions for persistence.

``FileRepository`` keeps JSON documents (ensemble manifest, run info) and
``ReportRepository`` the CSV reports.  Every CSV has a fixed column order
and float format so two runs with equal results give byte-identical files,
and every CSV can be read back into the domain models it was written from.
"""

from __future__ import annotations

import json
import math
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from ...domain.common.exceptions import DataNotAvailableError
from ...domain.common.models import POINT_TYPES, PointType
from ...domain.ensemble.models import DistillationReport, DistillationRow, ProbeEntry, StageEntry
from ...domain.evaluate.models import MetricsReport, PatientScore, PointMetrics
from ...utils.sanitization import to_serializable

FLOAT_FORMAT = "%.6f"

METRICS_COLUMNS = ["point", "Se", "PPV", "m", "sigma", "TP", "FP", "FN"]
PATIENT_COLUMNS = ["patient_id", "split", "F"]
SCATTER_COLUMNS = ["patient_id", "split", "f_base", "f_ensemble", "category"]
SUMMARY_COLUMNS = [
    "split",
    "patients",
    "f_base",
    "f_ensemble",
    "outliers_base",
    "outliers_ensemble",
    "distilled",
    "outlier",
    "stable",
]
STAGE_COLUMNS = ["iteration", "subset_size", "retrains"]
PROBE_COLUMNS = ["member", "own_size", "own_good", "unseen_size", "unseen_good", "probed"]
PROBS_COLUMNS = ["sample", "p", "qrs", "t", "background"]
LOSS_COLUMNS = ["epoch", "mean_loss"]


class BaseRepository(ABC):
    """Abstract base class for storing and retrieving run artifacts."""

    @abstractmethod
    def save(self, key: str, data: Any) -> Path:
        """Persist the provided data under the given key."""

    @abstractmethod
    def load(self, key: str) -> Optional[Any]:
        """Retrieve previously saved data for the given key, if present."""


class FileRepository(BaseRepository):
    """Persist JSON documents on disk."""

    def __init__(self, base_dir: str | Path = "./output") -> None:
        self.base_dir = Path(base_dir)
        self.base_dir.mkdir(parents=True, exist_ok=True)

    def _path_for(self, key: str) -> Path:
        safe_key = key.replace("/", "_")
        return self.base_dir / f"{safe_key}.json"

    def exists(self, key: str) -> bool:
        return self._path_for(key).exists()

    def save(self, key: str, data: Any) -> Path:
        path = self._path_for(key)
        with path.open("w", encoding="utf-8") as f:
            json.dump(to_serializable(data), f, indent=2, sort_keys=True)
        return path

    def load(self, key: str) -> Optional[Any]:
        path = self._path_for(key)
        if not path.exists():
            return None
        with path.open("r", encoding="utf-8") as f:
            return json.load(f)


def _opt(value: Any) -> Optional[float]:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return None
    return float(value)


class ReportRepository(BaseRepository):
    """CSV reports under ``base_dir``; ``key`` is the file stem."""

    def __init__(self, base_dir: str | Path = "./output") -> None:
        self.base_dir = Path(base_dir)
        self.base_dir.mkdir(parents=True, exist_ok=True)

    def path_for(self, key: str) -> Path:
        return self.base_dir / f"{key.replace('/', '_')}.csv"

    def exists(self, key: str) -> bool:
        return self.path_for(key).exists()

    def save(self, key: str, data: Any) -> Path:
        """Write a DataFrame as-is."""
        frame = data if isinstance(data, pd.DataFrame) else pd.DataFrame(data)
        path = self.path_for(key)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return path

    def load(self, key: str) -> Optional[pd.DataFrame]:
        path = self.path_for(key)
        if not path.exists():
            return None
        return pd.read_csv(path, dtype={"patient_id": str})

    def _require(self, key: str) -> pd.DataFrame:
        frame = self.load(key)
        if frame is None:
            raise DataNotAvailableError(f"report not found: {self.path_for(key)}")
        return frame

    # -- metrics -----------------------------------------------------------

    def save_metrics(self, key: str, report: MetricsReport) -> Path:
        rows = []
        for point in POINT_TYPES:
            m = report[point]
            rows.append([point.value, m.se, m.ppv, m.mean_ms, m.sigma_ms, m.tp, m.fp, m.fn])
        return self.save(key, pd.DataFrame(rows, columns=METRICS_COLUMNS))

    def load_metrics(self, key: str) -> MetricsReport:
        frame = self._require(key)
        rows: Dict[PointType, PointMetrics] = {}
        for rec in frame.to_dict("records"):
            point = PointType(rec["point"])
            rows[point] = PointMetrics(
                se=_opt(rec["Se"]),
                ppv=_opt(rec["PPV"]),
                mean_ms=_opt(rec["m"]),
                sigma_ms=_opt(rec["sigma"]),
                tp=int(rec["TP"]),
                fp=int(rec["FP"]),
                fn=int(rec["FN"]),
            )
        return MetricsReport(rows=rows)

    # -- per-patient scores -------------------------------------------------

    def save_patient_scores(self, key: str, scores: Sequence[PatientScore]) -> Path:
        rows = [[s.patient_id, s.split.value if s.split else "", s.f] for s in scores]
        return self.save(key, pd.DataFrame(rows, columns=PATIENT_COLUMNS))

    def load_patient_scores(self, key: str) -> List[PatientScore]:
        frame = self._require(key).fillna({"split": ""})
        return [
            PatientScore(patient_id=str(r["patient_id"]), split=r["split"] or None, f=float(r["F"]))
            for r in frame.to_dict("records")
        ]

    # -- distillation ------------------------------------------------------

    def save_distillation(self, key: str, report: DistillationReport) -> Path:
        rows = [[r.patient_id, r.split.value, r.f_base, r.f_ensemble, r.category] for r in report.rows]
        path = self.save(key, pd.DataFrame(rows, columns=SCATTER_COLUMNS))
        summary = [
            [
                s.split.value,
                s.patients,
                s.f_base,
                s.f_ensemble,
                s.outliers_base,
                s.outliers_ensemble,
                s.categories.get("distilled", 0),
                s.categories.get("outlier", 0),
                s.categories.get("stable", 0),
            ]
            for s in report.summary
        ]
        self.save(f"{key}_summary", pd.DataFrame(summary, columns=SUMMARY_COLUMNS))
        return path

    def load_scattergram(self, key: str) -> List[DistillationRow]:
        return [
            DistillationRow(
                patient_id=str(r["patient_id"]),
                split=r["split"],
                f_base=float(r["f_base"]),
                f_ensemble=float(r["f_ensemble"]),
                category=r["category"],
            )
            for r in self._require(key).to_dict("records")
        ]

    # -- ensemble history and probe ---------------------------------------

    def save_stage_history(self, key: str, stages: Sequence[StageEntry]) -> Path:
        rows = [[s.iteration, s.subset_size, s.retrains] for s in stages]
        return self.save(key, pd.DataFrame(rows, columns=STAGE_COLUMNS))

    def load_stage_history(self, key: str) -> List[StageEntry]:
        return [StageEntry(**{k: int(v) for k, v in r.items()}) for r in self._require(key).to_dict("records")]

    def save_probe(self, key: str, entries: Sequence[ProbeEntry]) -> Path:
        rows = [
            [e.member, e.own_size, e.own_good, e.unseen_size, e.unseen_good, e.probed] for e in entries
        ]
        frame = pd.DataFrame(rows, columns=PROBE_COLUMNS).astype({"unseen_good": "Int64"})
        return self.save(key, frame)

    def load_probe(self, key: str) -> List[ProbeEntry]:
        entries = []
        for r in self._require(key).to_dict("records"):
            unseen_good = _opt(r["unseen_good"])
            entries.append(
                ProbeEntry(
                    member=int(r["member"]),
                    own_size=int(r["own_size"]),
                    own_good=int(r["own_good"]),
                    unseen_size=int(r["unseen_size"]),
                    unseen_good=None if unseen_good is None else int(unseen_good),
                    probed=bool(r["probed"]),
                )
            )
        return entries

    # -- training ----------------------------------------------------------

    def save_loss_log(self, key: str, epoch_losses: Sequence[float]) -> Path:
        """One ``epoch,mean_loss`` line per finished epoch, epochs counted from 1."""
        rows = [[epoch, loss] for epoch, loss in enumerate(epoch_losses, start=1)]
        return self.save(key, pd.DataFrame(rows, columns=LOSS_COLUMNS))

    def load_loss_log(self, key: str) -> List[float]:
        return [float(v) for v in self._require(key)["mean_loss"]]

    # -- raw network output -------------------------------------------------

    def save_probabilities(self, key: str, probs: np.ndarray) -> Path:
        """Per-sample channel probabilities of one record, ``probs`` shaped ``(4, T)``."""
        frame = pd.DataFrame(np.asarray(probs).T, columns=PROBS_COLUMNS[1:])
        frame.insert(0, "sample", np.arange(frame.shape[0]))
        return self.save(key, frame)
