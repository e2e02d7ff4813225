"""Type definitions for evaluation reports and significance tests."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import pandas as pd

MINIMIZED_METRICS = ("ranking_loss", "coverage")
MAXIMIZED_METRICS = ("avg_auc", "instance_auc", "macro_f1", "micro_f1", "instance_f1")
METRICS = MINIMIZED_METRICS + MAXIMIZED_METRICS
EXTRA_ROWS = (
    "n_labels",
    "skipped_instances_ranking",
    "skipped_instances_coverage",
    "skipped_labels_auc",
    "skipped_instances_auc",
    "vacuous_labels_f1",
)


def is_minimized(metric: str) -> bool:
    return metric in MINIMIZED_METRICS


class Verdict(str, Enum):
    """Outcome of a paired comparison."""

    A_BETTER = "a_better"
    B_BETTER = "b_better"
    NO_DIFFERENCE = "no_difference"


@dataclass(frozen=True)
class TTestResult:
    """Paired t-test outcome."""

    verdict: Verdict
    t: float
    p: float
    mean_diff: float
    n: int


@dataclass
class MetricsReport:
    """Per-run metric values with their mean and sample standard deviation.

    ``values`` maps each metric to one value per run; ``extras`` holds the label count and
    the skip counts in the same layout.
    """

    values: dict[str, list[float]]
    extras: dict[str, list[float]] = field(default_factory=dict)
    seeds: list[int | None] = field(default_factory=list)

    @property
    def n_runs(self) -> int:
        return len(next(iter(self.values.values()), []))

    def mean(self, metric: str) -> float:
        return float(np.mean(self._row(metric)))

    def std(self, metric: str) -> float:
        row = self._row(metric)
        return float(np.std(row, ddof=1)) if len(row) > 1 else 0.0

    def value(self, metric: str) -> float:
        """The single value of a one-run report, or the mean otherwise."""
        return self.mean(metric)

    def _row(self, metric: str) -> list[float]:
        if metric in self.values:
            return self.values[metric]
        return self.extras[metric]

    def to_frame(self) -> pd.DataFrame:
        """Rows ``metric,mean,std,seed_0..seed_{r-1}``; metrics first, then extras."""
        seed_columns = [f"seed_{i}" for i in range(self.n_runs)]
        rows = []
        for name in list(self.values) + [e for e in EXTRA_ROWS if e in self.extras]:
            row = {"metric": name, "mean": self.mean(name), "std": self.std(name)}
            row.update(dict(zip(seed_columns, self._row(name))))
            rows.append(row)
        return pd.DataFrame(rows, columns=["metric", "mean", "std", *seed_columns])

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "MetricsReport":
        seed_columns = [c for c in frame.columns if str(c).startswith("seed_")]
        values: dict[str, list[float]] = {}
        extras: dict[str, list[float]] = {}
        for _, row in frame.iterrows():
            target = extras if row["metric"] in EXTRA_ROWS else values
            target[row["metric"]] = [float(row[c]) for c in seed_columns]
        return cls(values=values, extras=extras, seeds=[None] * len(seed_columns))
