# SPDX-License-Identifier: MIT

"""HTML report generation utilities."""

from __future__ import annotations

from html import escape
from typing import Dict, Sequence

import pandas as pd

from ...domain.common.models import POINT_TYPES
from ...domain.evaluate.models import MetricsReport

MEASURE_COLUMNS = ["Se (%)", "PPV (%)", "m (ms)", "sigma (ms)"]


def metrics_table(report: MetricsReport) -> pd.DataFrame:
    """Quality table with one row per boundary point (``QRS begin`` ...)."""
    rows = []
    for point in POINT_TYPES:
        m = report[point]
        rows.append(
            {
                "Point": point.label,
                "Se (%)": m.se,
                "PPV (%)": m.ppv,
                "m (ms)": m.mean_ms,
                "sigma (ms)": m.sigma_ms,
                "TP": m.tp,
                "FP": m.fp,
                "FN": m.fn,
            }
        )
    frame = pd.DataFrame(rows)
    # all-None columns would stay object dtype and print "None"
    frame[MEASURE_COLUMNS] = frame[MEASURE_COLUMNS].astype(float)
    return frame


def frame_html(frame: pd.DataFrame) -> str:
    return frame.to_html(index=False, float_format=lambda v: f"{v:.2f}", na_rep="n/a", border=0)


def build_html_report(title: str, sections: Dict[str, str], notes: Sequence[str] = ()) -> str:
    """Assemble a simple HTML report from sections.

    Parameters
    ----------
    title:
        The report title.
    sections:
        A mapping of section headings to HTML fragments (tables, figures).
    notes:
        Plain-text lines shown under the title (run parameters).

    Returns
    -------
    str
        A complete HTML document.
    """
    notes_html = "".join(f"<li>{escape(n)}</li>" for n in notes)
    html_sections = "\n".join(
        f"<h2>{escape(heading)}</h2>\n<div>{content}</div>" for heading, content in sections.items()
    )
    return f"""<!DOCTYPE html>
<html>
  <head>
    <meta charset="utf-8" />
    <title>{escape(title)}</title>
    <style>
      body {{ font-family: sans-serif; margin: 2em; }}
      table {{ border-collapse: collapse; }}
      td, th {{ padding: 0.2em 0.8em; text-align: right; }}
    </style>
  </head>
  <body>
    <h1>{escape(title)}</h1>
    <ul>{notes_html}</ul>
    {html_sections}
  </body>
</html>
"""
