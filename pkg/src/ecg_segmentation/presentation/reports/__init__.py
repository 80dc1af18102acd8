# SPDX-License-Identifier: MIT

"""Report generation utilities."""

from .figures import export_svg, probe_figure, scattergram_figure, stage_figure
from .html_generator import build_html_report, frame_html, metrics_table

__all__ = [
    "build_html_report",
    "export_svg",
    "frame_html",
    "metrics_table",
    "probe_figure",
    "scattergram_figure",
    "stage_figure",
]
