#!/usr/bin/env python3
# SPDX-License-Identifier: MIT

"""Compare a finished run with the published base-network quality.

Reads ``metrics_base.csv`` (or ``metrics_base_mean.csv`` when present) and
``scattergram_summary.csv`` from a run directory, prints them next to the
reference figures and checks the reproduction thresholds.  Exits non-zero
when a threshold is missed.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Tuple

from ecg_segmentation.config.constants import (
    REFERENCE_BASE_F,
    REFERENCE_BASE_METRICS,
    REFERENCE_ENSEMBLE_F,
)
from ecg_segmentation.domain.common.models import POINT_TYPES, WaveType
from ecg_segmentation.domain.evaluate.models import MetricsReport
from ecg_segmentation.infrastructure.persistence.repositories import ReportRepository

logger = logging.getLogger(__name__)

# minimum (Se %, PPV %) per wave on the test split
MIN_DETECTION: Dict[WaveType, Tuple[float, float]] = {
    WaveType.QRS: (98.0, 95.0),
    WaveType.P: (90.0, 75.0),
    WaveType.T: (93.0, 88.0),
}
MAX_ABS_MEAN_MS = 20.0
MAX_SIGMA_MS = 40.0
MIN_BASE_F = 0.90


def check_metrics(report: MetricsReport) -> List[str]:
    failures = []
    for point in POINT_TYPES:
        row = report[point]
        ref = REFERENCE_BASE_METRICS[point.value]
        print(
            f"{point.label:<10} Se {row.se or 0:6.2f} ({ref[0]:6.2f})  PPV {row.ppv or 0:6.2f} ({ref[1]:6.2f})"
            f"  m {row.mean_ms or 0:6.1f} ({ref[2]:5.1f})  sigma {row.sigma_ms or 0:5.1f} ({ref[3]:5.1f})"
        )
        min_se, min_ppv = MIN_DETECTION[point.wave]
        if row.se is None or row.se < min_se:
            failures.append(f"{point.label}: Se {row.se} < {min_se}")
        if row.ppv is None or row.ppv < min_ppv:
            failures.append(f"{point.label}: PPV {row.ppv} < {min_ppv}")
        if row.mean_ms is None or abs(row.mean_ms) > MAX_ABS_MEAN_MS:
            failures.append(f"{point.label}: |m| {row.mean_ms} > {MAX_ABS_MEAN_MS}")
        if row.sigma_ms is None or row.sigma_ms > MAX_SIGMA_MS:
            failures.append(f"{point.label}: sigma {row.sigma_ms} > {MAX_SIGMA_MS}")
    return failures


def check_distillation(repo: ReportRepository) -> List[str]:
    summary = repo.load("scattergram_summary")
    if summary is None:
        logger.warning("No distillation summary, ensemble checks skipped")
        return []
    test = summary[summary["split"] == "test"]
    if test.empty:
        return ["no test split in the distillation summary"]
    f_base = float(test["f_base"].iloc[0])
    f_ens = float(test["f_ensemble"].iloc[0])
    print(f"overall F  base {f_base:.4f} ({REFERENCE_BASE_F})  ensemble {f_ens:.4f} (>{REFERENCE_ENSEMBLE_F})")
    failures = []
    if f_base < MIN_BASE_F:
        failures.append(f"base F {f_base:.4f} < {MIN_BASE_F}")
    if f_ens < f_base:
        failures.append(f"ensemble F {f_ens:.4f} below base F {f_base:.4f}")
    return failures


def main() -> None:
    parser = argparse.ArgumentParser(description="Compare a run with the reference quality table")
    parser.add_argument("run_dir", type=Path, help="output directory of a finished run")
    args = parser.parse_args()

    repo = ReportRepository(args.run_dir)
    key = "metrics_base_mean" if repo.exists("metrics_base_mean") else "metrics_base"
    failures = check_metrics(repo.load_metrics(key)) + check_distillation(repo)
    for failure in failures:
        logger.error("Threshold missed: %s", failure)
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    main()
