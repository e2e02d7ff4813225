"""Multi-label evaluation metrics, aggregation and paired significance tests."""

from .classification import instance_f1, macro_f1, micro_f1, vacuous_labels
from .ranking import (
    avg_auc,
    avg_auc_detail,
    coverage,
    coverage_detail,
    instance_auc,
    instance_auc_detail,
    ranking_loss,
    ranking_loss_detail,
)
from .report import (
    aggregate,
    evaluate,
    read_report_csv,
    ttest_matrix,
    write_report_csv,
    write_ttest_csv,
)
from .significance import paired_t_test
from .types import (
    EXTRA_ROWS,
    MAXIMIZED_METRICS,
    METRICS,
    MINIMIZED_METRICS,
    MetricsReport,
    TTestResult,
    Verdict,
    is_minimized,
)

__all__ = [
    "EXTRA_ROWS",
    "MAXIMIZED_METRICS",
    "METRICS",
    "MINIMIZED_METRICS",
    "MetricsReport",
    "TTestResult",
    "Verdict",
    "aggregate",
    "avg_auc",
    "avg_auc_detail",
    "coverage",
    "coverage_detail",
    "evaluate",
    "instance_auc",
    "instance_auc_detail",
    "instance_f1",
    "is_minimized",
    "macro_f1",
    "micro_f1",
    "paired_t_test",
    "ranking_loss",
    "ranking_loss_detail",
    "read_report_csv",
    "ttest_matrix",
    "vacuous_labels",
    "write_report_csv",
    "write_ttest_csv",
]
