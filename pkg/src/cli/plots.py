"""SVG charts: metric radar across methods and the training trace."""

import io
import logging
import math
from pathlib import Path

import matplotlib
import numpy as np
import pandas as pd
from matplotlib.figure import Figure

from src.core.errors import ShapeError
from src.metrics.types import MetricsReport
from src.utils.fileio import atomic_write_text

logger = logging.getLogger(__name__)

RADAR_AXES = ("avg_auc", "instance_auc", "macro_f1", "micro_f1", "instance_f1", "coverage")
RADAR_LABELS = {
    "avg_auc": "Average AUC",
    "instance_auc": "Instance AUC",
    "macro_f1": "MacroF1",
    "micro_f1": "MicroF1",
    "instance_f1": "InstanceF1",
    "coverage": "1 - Coverage (normalized)",
}
RADAR_FLOOR = 0.2

SVG_RC = {"svg.hashsalt": "spmld", "svg.fonttype": "none"}


def axis_angles(count: int) -> np.ndarray:
    """Evenly spaced axis angles in radians, starting at 0."""
    return np.arange(count) * (2.0 * math.pi / count)


def _axis_value(report: MetricsReport, axis: str) -> float:
    if axis != "coverage":
        return report.mean(axis)
    labels = report.mean("n_labels") if "n_labels" in report.extras else 0.0
    return 1.0 - report.mean("coverage") / (labels - 1.0) if labels > 1 else 1.0


def radar_values(reports: dict[str, MetricsReport]) -> pd.DataFrame:
    """Per-method axis values min-max scaled into [0.2, 1] across methods.

    An axis on which every method scores the same maps to 1.

    Raises:
        ShapeError: If fewer than two reports are given or their metrics differ.
    """
    if len(reports) < 2:
        raise ShapeError("radar chart needs at least two reports", module="cli")
    keys = None
    for name, report in reports.items():
        if keys is None:
            keys = set(report.values)
        elif set(report.values) != keys:
            raise ShapeError(f"report {name!r} has different metrics", module="cli")
    missing = [a for a in RADAR_AXES if a not in keys]
    if missing:
        raise ShapeError(f"reports lack radar metrics {missing}", module="cli")

    raw = pd.DataFrame(
        {axis: [_axis_value(r, axis) for r in reports.values()] for axis in RADAR_AXES},
        index=list(reports),
    )
    low, high = raw.min(axis=0), raw.max(axis=0)
    span = (high - low).replace(0.0, np.nan)
    scaled = RADAR_FLOOR + (1.0 - RADAR_FLOOR) * (raw - low) / span
    return scaled.fillna(1.0)


def _render_svg(fig: Figure) -> str:
    buffer = io.StringIO()
    with matplotlib.rc_context(SVG_RC):
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def plot_radar(reports: dict[str, MetricsReport], path: str | Path, title: str = "") -> Path:
    """Draw one closed polygon per method and write a standalone SVG."""
    values = radar_values(reports)
    angles = axis_angles(len(RADAR_AXES))
    closed = np.append(angles, angles[0])

    with matplotlib.rc_context(SVG_RC):
        fig = Figure(figsize=(6, 6))
        ax = fig.add_subplot(projection="polar")
        for method, row in values.iterrows():
            points = np.append(row.to_numpy(), row.iloc[0])
            ax.plot(closed, points, linewidth=1.5, label=str(method))
            ax.fill(closed, points, alpha=0.1)
        ax.set_xticks(angles)
        ax.set_xticklabels([RADAR_LABELS[a] for a in RADAR_AXES])
        ax.set_ylim(0.0, 1.0)
        ax.set_yticklabels([])
        ax.legend(loc="upper right", bbox_to_anchor=(1.25, 1.1))
        if title:
            ax.set_title(title)
        svg = _render_svg(fig)
    written = atomic_write_text(path, svg)
    logger.info(f"radar chart written to {written}")
    return written


def plot_trace(trace: pd.DataFrame, path: str | Path) -> Path:
    """Objective and pace parameters per outer iteration."""
    if trace.empty:
        raise ShapeError("trace has no iterations to plot", module="cli")
    with matplotlib.rc_context(SVG_RC):
        fig = Figure(figsize=(8, 6))
        top, bottom = fig.subplots(2, 1, sharex=True)
        top.plot(trace["iter"], trace["objective"], marker="o", markersize=3)
        top.set_ylabel("objective")
        bottom.plot(trace["iter"], trace["lambda"], label="lambda")
        bottom.plot(trace["iter"], trace["gamma"], label="gamma")
        bottom.plot(trace["iter"], trace["mean_p"], label="mean pace weight")
        bottom.set_xlabel("outer iteration")
        bottom.legend()
        svg = _render_svg(fig)
    written = atomic_write_text(path, svg)
    logger.info(f"trace chart written to {written}")
    return written
