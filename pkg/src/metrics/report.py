"""Evaluation reports: computing, aggregating, comparing and exporting."""

import logging
from itertools import combinations
from pathlib import Path

import numpy as np
import pandas as pd

from src.core.errors import ShapeError
from src.utils.fileio import atomic_write_csv

from .classification import instance_f1, macro_f1, micro_f1, vacuous_labels
from .ranking import avg_auc_detail, coverage_detail, instance_auc_detail, ranking_loss_detail
from .significance import paired_t_test
from .types import METRICS, MetricsReport, is_minimized

logger = logging.getLogger(__name__)

TTEST_COLUMNS = ["method_a", "method_b", "metric", "t", "p", "verdict"]


def evaluate(
    scores: np.ndarray,
    truth: np.ndarray,
    pred: np.ndarray | None = None,
    seed: int | None = None,
) -> MetricsReport:
    """All seven metrics of one run.

    Args:
        scores: l×n label scores.
        truth: l×n ±1 ground truth.
        pred: ±1 predictions; defaults to the sign of ``scores`` with sign(0) = +1.
        seed: Seed of the run, kept for aggregation order.

    Raises:
        UndefinedMetricError: If a ranking metric has no qualifying instance or label.
    """
    scores = np.asarray(scores, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if pred is None:
        pred = np.where(scores >= 0, 1.0, -1.0)

    rkl, skipped_rkl = ranking_loss_detail(scores, truth)
    cov, skipped_cov = coverage_detail(scores, truth)
    label_auc, skipped_labels = avg_auc_detail(scores, truth)
    inst_auc, skipped_auc = instance_auc_detail(scores, truth)
    values = {
        "ranking_loss": rkl,
        "coverage": cov,
        "avg_auc": label_auc,
        "instance_auc": inst_auc,
        "macro_f1": macro_f1(pred, truth),
        "micro_f1": micro_f1(pred, truth),
        "instance_f1": instance_f1(pred, truth),
    }
    extras = {
        "n_labels": truth.shape[0],
        "skipped_instances_ranking": skipped_rkl,
        "skipped_instances_coverage": skipped_cov,
        "skipped_labels_auc": skipped_labels,
        "skipped_instances_auc": skipped_auc,
        "vacuous_labels_f1": vacuous_labels(pred, truth),
    }
    return MetricsReport(
        values={k: [float(v)] for k, v in values.items()},
        extras={k: [float(v)] for k, v in extras.items()},
        seeds=[seed],
    )


def aggregate(per_seed: list[MetricsReport]) -> MetricsReport:
    """Merge run reports into one multi-run report.

    Runs are put in a canonical order (by seed, then by values) so the result does not
    depend on input order.

    Raises:
        ShapeError: If no report is given or metric keys differ.
    """
    if not per_seed:
        raise ShapeError("aggregate needs at least one report", module="metrics")
    keys = list(per_seed[0].values)
    extra_keys = list(per_seed[0].extras)
    runs = []
    for report in per_seed:
        if list(report.values) != keys or list(report.extras) != extra_keys:
            raise ShapeError("reports have different metric keys", module="metrics")
        seeds = report.seeds or [None] * report.n_runs
        for i, seed in enumerate(seeds):
            runs.append(
                (
                    seed,
                    tuple(report.values[k][i] for k in keys),
                    tuple(report.extras[k][i] for k in extra_keys),
                )
            )
    runs.sort(key=lambda run: (run[0] is None, run[0] or 0, run[1], run[2]))
    return MetricsReport(
        values={k: [run[1][i] for run in runs] for i, k in enumerate(keys)},
        extras={k: [run[2][i] for run in runs] for i, k in enumerate(extra_keys)},
        seeds=[run[0] for run in runs],
    )


def ttest_matrix(reports_by_method: dict[str, MetricsReport], alpha: float = 0.05) -> pd.DataFrame:
    """Paired t-tests for every metric and every pair of methods (in insertion order)."""
    rows = []
    for method_a, method_b in combinations(reports_by_method, 2):
        report_a, report_b = reports_by_method[method_a], reports_by_method[method_b]
        for metric in METRICS:
            result = paired_t_test(
                report_a.values[metric],
                report_b.values[metric],
                alpha=alpha,
                higher_is_better=not is_minimized(metric),
            )
            rows.append(
                {
                    "method_a": method_a,
                    "method_b": method_b,
                    "metric": metric,
                    "t": result.t,
                    "p": result.p,
                    "verdict": result.verdict.value,
                }
            )
    return pd.DataFrame(rows, columns=TTEST_COLUMNS)


def write_report_csv(path: str | Path, report: MetricsReport) -> Path:
    return atomic_write_csv(path, report.to_frame())


def read_report_csv(path: str | Path) -> MetricsReport:
    return MetricsReport.from_frame(pd.read_csv(path))


def write_ttest_csv(path: str | Path, frame: pd.DataFrame) -> Path:
    return atomic_write_csv(path, frame)
