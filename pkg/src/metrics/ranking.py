"""Score-based multi-label metrics: ranking loss, coverage, label and instance AUC.

Matrices are l×n (labels × instances). Tied scores count one half in every pairwise
comparison. Instances or labels that lack a positive or a negative are skipped and the
number skipped is reported by the ``*_detail`` variants.
"""

import numpy as np
from scipy.stats import rankdata

from src.core.errors import ShapeError, UndefinedMetricError


def _check(scores: np.ndarray, truth: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    scores = np.asarray(scores, dtype=float)
    truth = np.asarray(truth)
    if scores.ndim != 2 or scores.shape != truth.shape:
        raise ShapeError(
            f"scores {scores.shape} and truth {truth.shape} must be equal-shaped matrices",
            module="metrics",
        )
    return scores, truth > 0


def _pair_counts(scores: np.ndarray, positive: np.ndarray, axis: int):
    """Correctly ordered (positive above negative) pairs plus half the ties, per slice."""
    ranks = rankdata(scores, axis=axis)
    n_pos = positive.sum(axis=axis)
    n_neg = positive.shape[axis] - n_pos
    correct = (ranks * positive).sum(axis=axis) - n_pos * (n_pos + 1) / 2.0
    return correct, (n_pos * n_neg).astype(float), (n_pos > 0) & (n_neg > 0)


def _mean_or_raise(values: np.ndarray, name: str) -> float:
    if values.size == 0:
        raise UndefinedMetricError(f"{name}: no instance or label qualifies", module="metrics")
    return float(np.mean(values))


def ranking_loss_detail(scores: np.ndarray, truth: np.ndarray) -> tuple[float, int]:
    """Ranking loss and the number of skipped instances."""
    scores, positive = _check(scores, truth)
    correct, pairs, valid = _pair_counts(scores, positive, axis=0)
    losses = (pairs[valid] - correct[valid]) / pairs[valid]
    return _mean_or_raise(losses, "ranking_loss"), int((~valid).sum())


def ranking_loss(scores: np.ndarray, truth: np.ndarray) -> float:
    """Mean fraction of (relevant, irrelevant) label pairs ordered wrongly per instance."""
    return ranking_loss_detail(scores, truth)[0]


def coverage_detail(scores: np.ndarray, truth: np.ndarray) -> tuple[float, int]:
    """Coverage and the number of instances without a relevant label."""
    scores, positive = _check(scores, truth)
    valid = positive.any(axis=0)
    lowest_relevant = np.where(positive, scores, np.inf).min(axis=0)
    depth = (scores >= lowest_relevant[None, :]).sum(axis=0) - 1
    return _mean_or_raise(depth[valid].astype(float), "coverage"), int((~valid).sum())


def coverage(scores: np.ndarray, truth: np.ndarray) -> float:
    """Mean rank (from 0) of the lowest-scored relevant label; ties count against it."""
    return coverage_detail(scores, truth)[0]


def avg_auc_detail(scores: np.ndarray, truth: np.ndarray) -> tuple[float, int]:
    """Label-averaged AUC and the number of skipped labels."""
    scores, positive = _check(scores, truth)
    correct, pairs, valid = _pair_counts(scores, positive, axis=1)
    return _mean_or_raise(correct[valid] / pairs[valid], "avg_auc"), int((~valid).sum())


def avg_auc(scores: np.ndarray, truth: np.ndarray) -> float:
    """AUC per label over instances, averaged over labels."""
    return avg_auc_detail(scores, truth)[0]


def instance_auc_detail(scores: np.ndarray, truth: np.ndarray) -> tuple[float, int]:
    """Instance-averaged AUC and the number of skipped instances."""
    scores, positive = _check(scores, truth)
    correct, pairs, valid = _pair_counts(scores, positive, axis=0)
    return _mean_or_raise(correct[valid] / pairs[valid], "instance_auc"), int((~valid).sum())


def instance_auc(scores: np.ndarray, truth: np.ndarray) -> float:
    """AUC per instance over labels, averaged over instances."""
    return instance_auc_detail(scores, truth)[0]
