# SPDX-License-Identifier: MIT

"""Service for generating the run report from the stored CSVs."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List

import pandas as pd

from ..config.constants import REFERENCE_PARAM_COUNT
from ..config.settings import Settings, settings
from ..infrastructure.persistence.repositories import FileRepository, ReportRepository
from .ensemble_building import MANIFEST_KEY
from .model_training import ModelTrainingService

logger = logging.getLogger(__name__)

REPORT_NAME = "report.html"
FIGURE_DIR = "figures"


class ReportGenerationService:
    """Render the HTML report and figure files of a finished (or partial) run."""

    def __init__(
        self,
        cfg: Settings | None = None,
        reports: ReportRepository | None = None,
        files: FileRepository | None = None,
    ) -> None:
        self.cfg = cfg or settings
        self.reports = reports or ReportRepository(self.cfg.output_dir)
        self.files = files or FileRepository(self.cfg.output_dir)

    def generate(self) -> Path:
        """Write ``report.html`` plus SVG figures where a static engine is available.

        Sections whose CSV is missing are left out, so the report can be
        rendered after any stage.
        """
        from ..presentation.reports import (
            build_html_report,
            export_svg,
            frame_html,
            metrics_table,
            probe_figure,
            scattergram_figure,
            stage_figure,
        )

        logger.info("Generating report in %s", self.cfg.output_dir)
        figure_dir = self.cfg.output_dir / FIGURE_DIR
        figure_dir.mkdir(parents=True, exist_ok=True)
        sections: Dict[str, str] = {}
        figures = []

        for key, heading in (
            ("metrics_base", "Base network, test split"),
            ("metrics_base_mean", "Base network, mean over runs"),
            ("metrics_ensemble", "Ensemble, test split"),
        ):
            if self.reports.exists(key):
                sections[heading] = frame_html(metrics_table(self.reports.load_metrics(key)))

        losses = {
            f"run {run}": self.reports.load_loss_log(ModelTrainingService.loss_key(run))
            for run in range(self.cfg.base_runs)
            if self.reports.exists(ModelTrainingService.loss_key(run))
        }
        if losses:
            table = pd.DataFrame({name: pd.Series(values) for name, values in losses.items()})
            table = table.apply(lambda col: col.map(lambda v: f"{v:.5f}" if pd.notna(v) else "n/a"))
            table.insert(0, "epoch", range(1, len(table) + 1))
            sections["Training loss per epoch"] = frame_html(table)

        if self.reports.exists("scattergram"):
            rows = self.reports.load_scattergram("scattergram")
            figures.append(("scattergram", "F-score scattergram", scattergram_figure(
                rows, outlier_threshold=self.cfg.outlier_threshold
            )))
            summary = self.reports.load("scattergram_summary")
            if summary is not None:
                sections["Distillation summary"] = frame_html(summary)

        manifest = self.files.load(MANIFEST_KEY)
        if manifest is not None and self.reports.exists("stage_history"):
            stages = self.reports.load_stage_history("stage_history")
            figures.append(("stage_history", "Ensemble stage dynamics", stage_figure(manifest["history"], stages)))

        if self.reports.exists("probe"):
            entries = self.reports.load_probe("probe")
            if any(e.probed for e in entries):
                figures.append(("probe", "Generalization probe", probe_figure(entries)))

        for i, (name, heading, fig) in enumerate(figures):
            sections[heading] = fig.to_html(full_html=False, include_plotlyjs=(i == 0))
            export_svg(fig, figure_dir / f"{name}.svg")

        run_info = self.files.load("run_info") or {}
        notes: List[str] = [
            f"lead: {self.cfg.lead}",
            f"matching: {self.cfg.matching}, F averaging: micro",
            f"parameters: {run_info.get('param_count', 'n/a')} (reference network: {REFERENCE_PARAM_COUNT})",
        ]
        path = self.cfg.output_dir / REPORT_NAME
        path.write_text(build_html_report("ECG segmentation run", sections, notes), encoding="utf-8")
        return path
