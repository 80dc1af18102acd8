# SPDX-License-Identifier: MIT

"""Plotly figures of the run reports."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Sequence

import plotly.graph_objects as go  # type: ignore[import]

from ...domain.common.models import SplitTag
from ...domain.ensemble.models import DistillationRow, ProbeEntry, StageEntry

logger = logging.getLogger(__name__)

_SPLIT_COLORS = {SplitTag.TRAIN: "#1f77b4", SplitTag.TEST: "#d62728"}


def scattergram_figure(rows: Sequence[DistillationRow], *, outlier_threshold: float = 0.9) -> go.Figure:
    """Base-network F against ensemble F, one point per patient."""
    fig = go.Figure()
    for tag in SplitTag:
        part = [r for r in rows if r.split == tag]
        if not part:
            continue
        fig.add_trace(
            go.Scatter(
                x=[r.f_base for r in part],
                y=[r.f_ensemble for r in part],
                mode="markers",
                name=tag.value,
                text=[f"{r.patient_id} ({r.category})" for r in part],
                marker={"color": _SPLIT_COLORS[tag], "size": 7, "opacity": 0.75},
            )
        )
    fig.add_trace(
        go.Scatter(x=[0, 1], y=[0, 1], mode="lines", name="equal", line={"dash": "dot", "color": "gray"})
    )
    fig.add_hline(y=outlier_threshold, line={"dash": "dash", "color": "orange"})
    fig.add_vline(x=outlier_threshold, line={"dash": "dash", "color": "orange"})
    fig.update_layout(
        title="Per-patient F-score: base network vs ensemble",
        xaxis_title="F (base network)",
        yaxis_title="F (ensemble)",
        xaxis={"range": [0, 1.02]},
        yaxis={"range": [0, 1.02]},
        template="plotly_white",
    )
    return fig


def stage_figure(history: Sequence[int], stages: Sequence[StageEntry] = ()) -> go.Figure:
    """Training-subset size before the first and after every accepted iteration."""
    retrains = [s.retrains for s in stages] + [0] * (len(history) - len(stages))
    fig = go.Figure(
        go.Scatter(
            x=list(range(len(history))),
            y=list(history),
            mode="lines+markers",
            text=[f"retrains: {r}" for r in retrains],
            name="patients left",
        )
    )
    fig.update_layout(
        title="Patients remaining in the training subset",
        xaxis_title="Iteration",
        yaxis_title="Patients",
        template="plotly_white",
    )
    return fig


def probe_figure(entries: Sequence[ProbeEntry]) -> go.Figure:
    """Grouped bars of well-segmented patients per member: own subset vs unseen rest."""
    probed = [e for e in entries if e.probed]
    labels = [f"member {e.member}" for e in probed]
    fig = go.Figure(
        [
            go.Bar(x=labels, y=[e.own_good for e in probed], name="own subset", marker_color="#08306b"),
            go.Bar(x=labels, y=[e.unseen_good for e in probed], name="unseen", marker_color="#6baed6"),
        ]
    )
    fig.update_layout(
        barmode="group",
        title="Patients at or above the screening threshold",
        yaxis_title="Patients",
        template="plotly_white",
    )
    return fig


def export_svg(fig: go.Figure, path: Path) -> bool:
    """Static SVG rendering; needs the optional ``kaleido`` engine."""
    try:
        fig.write_image(str(path), format="svg")
    except Exception as exc:  # missing or broken image engine
        logger.warning("SVG export of %s skipped: %s", path.name, exc)
        return False
    return True
