"""F1 variants over ±1 predictions (+1 is the positive class)."""

import numpy as np

from src.core.errors import ShapeError


def _confusion(pred: np.ndarray, truth: np.ndarray, axis: int | None):
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    if pred.shape != truth.shape:
        raise ShapeError(f"pred {pred.shape} and truth {truth.shape} differ", module="metrics")
    p, t = pred > 0, truth > 0
    tp = np.sum(p & t, axis=axis)
    fp = np.sum(p & ~t, axis=axis)
    fn = np.sum(~p & t, axis=axis)
    return tp, fp, fn


def _f1(tp, fp, fn) -> np.ndarray:
    tp, fp, fn = (np.asarray(v, dtype=float) for v in (tp, fp, fn))
    denom = 2.0 * tp + fp + fn
    # nothing predicted and nothing relevant scores 1
    return np.where(denom > 0, 2.0 * tp / np.where(denom > 0, denom, 1.0), 1.0)


def macro_f1(pred: np.ndarray, truth: np.ndarray) -> float:
    """Per-label F1 averaged over labels."""
    return float(np.mean(_f1(*_confusion(pred, truth, axis=1))))


def micro_f1(pred: np.ndarray, truth: np.ndarray) -> float:
    """F1 of TP, FP and FN pooled over all cells."""
    return float(_f1(*_confusion(pred, truth, axis=None)))


def instance_f1(pred: np.ndarray, truth: np.ndarray) -> float:
    """Per-instance F1 averaged over instances."""
    return float(np.mean(_f1(*_confusion(pred, truth, axis=0))))


def vacuous_labels(pred: np.ndarray, truth: np.ndarray) -> int:
    """Labels with TP = FP = FN = 0."""
    tp, fp, fn = _confusion(pred, truth, axis=1)
    return int(np.sum((tp + fp + fn) == 0))
