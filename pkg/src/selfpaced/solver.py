"""Closed-form minimizer of the per-row self-paced problem.

For one row of losses L (length n) the weights p ∈ [0, 1]ⁿ minimize

    f(p) = Σ p_j·L_j − λ·Σ p_j + γ·‖p‖₂.

With losses sorted ascending and a_j = λ − L_j, the minimizer sets the first θ₁
positions to 1, every position with L_j ≥ λ to 0, and the rest to c·a_j. Each
admissible θ₁ gets its c from the closed-form case table and is scored by the exact
objective of the weights it produces; the smallest score wins.
"""

import logging

import numpy as np

from .types import RowSolution, RowSolveInputs

logger = logging.getLogger(__name__)


def row_objective(weights: np.ndarray, losses: np.ndarray, lam: float, gamma: float) -> float:
    """f(p) = Σ p·L − λΣp + γ‖p‖₂."""
    weights = np.asarray(weights, dtype=float)
    losses = np.asarray(losses, dtype=float)
    return float(weights @ losses - lam * weights.sum() + gamma * np.linalg.norm(weights))


def solve_row(inp: RowSolveInputs) -> RowSolution:
    """Optimal pace weights for one row.

    Args:
        inp: Losses and pace parameters; validated on construction.

    Returns:
        Weights in the original order with the thresholds of the sorted order.
    """
    losses, lam, gamma = inp.losses, inp.lam, inp.gamma
    n = inp.n
    order = np.argsort(losses, kind="stable")
    sorted_losses = losses[order]

    # counts of sorted losses below λ and at most λ − γ
    n_below = int(np.searchsorted(sorted_losses, lam, side="left"))
    n_easy = int(np.searchsorted(sorted_losses, lam - gamma, side="right"))

    gaps = lam - sorted_losses[:n_below]
    lin = np.concatenate(([0.0], np.cumsum(gaps)))
    quad = np.concatenate(([0.0], np.cumsum(gaps * gaps)))

    t = np.arange(min(n_easy, n_below), n_below + 1)
    r = quad[n_below] - quad[t]
    s = lin[n_below] - lin[t]
    gamma_sq = gamma * gamma
    gap_next = np.append(gaps, 0.0)[t]

    with np.errstate(divide="ignore", invalid="ignore"):
        c = np.where(
            gamma_sq > r,
            np.sqrt(t / (gamma_sq - r)),
            np.where(gamma_sq == r, np.where(gamma_sq < s, 1.0 / gap_next, 0.0), np.inf),
        )
        threshold = 1.0 / c

    # positions whose intermediate weight c·a_j reaches 1 join the ones
    clamped = np.searchsorted(-gaps, -threshold, side="right")
    ones = np.maximum(t, clamped)
    rest = quad[n_below] - quad[ones]
    with np.errstate(invalid="ignore"):
        lin_rest = np.where(rest > 0, c * rest, 0.0)
        quad_rest = np.where(rest > 0, c * c * rest, 0.0)
    scores = -lin[ones] - lin_rest + gamma * np.sqrt(ones + quad_rest)

    best = int(np.argmin(scores))
    theta1 = int(ones[best])
    c_best = float(c[best])

    sorted_weights = np.zeros(n)
    sorted_weights[:theta1] = 1.0
    if n_below > theta1:
        with np.errstate(invalid="ignore"):
            sorted_weights[theta1:n_below] = np.clip(c_best * gaps[theta1:], 0.0, 1.0)

    weights = np.empty(n)
    weights[order] = sorted_weights
    return RowSolution(
        weights=weights,
        theta1=theta1,
        theta2=n_below + 1,
        objective_value=row_objective(weights, losses, lam, gamma),
    )
