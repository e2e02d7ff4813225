"""Paired two-sided Student t-test."""

import math

import numpy as np
from scipy.special import betainc

from src.core.errors import ShapeError

from .types import TTestResult, Verdict


def paired_t_test(a, b, alpha: float = 0.05, higher_is_better: bool = True) -> TTestResult:
    """Compare two paired samples.

    The p-value is the two-sided tail of Student's t with len−1 degrees of freedom,
    I_{df/(df+t²)}(df/2, 1/2). Identical samples give ``no_difference``; a constant
    nonzero shift has t = ±inf and p = 0.

    Args:
        a: Per-seed values of the first method.
        b: Per-seed values of the second method, same seeds.
        alpha: Significance level.
        higher_is_better: Orientation of the metric; False for minimized metrics.

    Raises:
        ShapeError: If the lengths differ or are below 2.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ShapeError(
            f"paired samples differ in length: {a.shape} vs {b.shape}", module="metrics"
        )
    n = a.size
    if n < 2:
        raise ShapeError(f"paired t-test needs at least 2 pairs, got {n}", module="metrics")

    diff = a - b
    mean = float(diff.mean())
    if np.all(diff == 0):
        return TTestResult(Verdict.NO_DIFFERENCE, t=0.0, p=1.0, mean_diff=0.0, n=n)

    df = n - 1
    sd = float(diff.std(ddof=1))
    if sd == 0:
        t, p = math.copysign(math.inf, mean), 0.0
    else:
        t = mean / (sd / math.sqrt(n))
        p = float(betainc(df / 2.0, 0.5, df / (df + t * t)))

    verdict = Verdict.NO_DIFFERENCE
    if p < alpha:
        a_higher = mean > 0
        verdict = Verdict.A_BETTER if a_higher == higher_is_better else Verdict.B_BETTER
    return TTestResult(verdict, t=t, p=p, mean_diff=mean, n=n)
