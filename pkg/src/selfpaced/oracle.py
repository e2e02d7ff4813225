"""Brute-force minimizer of the per-row pace objective, used to verify ``solve_row``."""

import logging

import numpy as np

from src.core.errors import ConfigError

from .solver import row_objective
from .types import RowSolveInputs

logger = logging.getLogger(__name__)

MAX_EXHAUSTIVE_N = 8
POLISH_ITERS = 500
POLISH_TOL = 1e-15


def _gradient(p: np.ndarray, losses: np.ndarray, lam: float, gamma: float) -> np.ndarray:
    norm = np.linalg.norm(p)
    grad = losses - lam
    if norm > 0:
        grad = grad + gamma * p / norm
    return grad


def _coordinate_sweep(p: np.ndarray, losses: np.ndarray, lam: float, gamma: float) -> np.ndarray:
    """Exact minimization over each coordinate in turn."""
    p = p.copy()
    for j in range(p.size):
        slope = losses[j] - lam
        rest_sq = float(p @ p - p[j] * p[j])
        if slope >= 0:
            p[j] = 0.0
        elif gamma <= -slope:
            p[j] = 1.0
        elif rest_sq <= 0:
            p[j] = 0.0
        else:
            p[j] = min(1.0, -slope * np.sqrt(rest_sq) / np.sqrt(gamma * gamma - slope * slope))
    return p


def _polish(p: np.ndarray, losses: np.ndarray, lam: float, gamma: float) -> np.ndarray:
    value = row_objective(p, losses, lam, gamma)
    for _ in range(POLISH_ITERS):
        previous = value
        grad = _gradient(p, losses, lam, gamma)
        step = 1.0
        while step > 1e-14:
            candidate = np.clip(p - step * grad, 0.0, 1.0)
            candidate_value = row_objective(candidate, losses, lam, gamma)
            if candidate_value < value:
                p, value = candidate, candidate_value
                break
            step *= 0.5
        swept = _coordinate_sweep(p, losses, lam, gamma)
        swept_value = row_objective(swept, losses, lam, gamma)
        if swept_value < value:
            p, value = swept, swept_value
        if previous - value <= POLISH_TOL:
            break
    return p


def oracle_minimize_row(inp: RowSolveInputs, grid_steps: int = 11) -> np.ndarray:
    """Minimize the row objective by exhaustive grid search plus projected-gradient polish.

    Args:
        inp: Losses and pace parameters.
        grid_steps: Grid points per axis on [0, 1] (at least 2).

    Returns:
        The polished minimizer.

    Raises:
        ConfigError: If the row is too long for exhaustive search or grid_steps < 2.
    """
    n = inp.n
    if n > MAX_EXHAUSTIVE_N:
        raise ConfigError(
            f"exhaustive search supports n <= {MAX_EXHAUSTIVE_N}, got {n}", module="selfpaced"
        )
    if grid_steps < 2:
        raise ConfigError(f"grid_steps must be at least 2, got {grid_steps}", module="selfpaced")
    if n == 0:
        return np.zeros(0)

    axis = np.linspace(0.0, 1.0, grid_steps)
    grid = np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1).reshape(-1, n)
    values = (
        grid @ inp.losses - inp.lam * grid.sum(axis=1) + inp.gamma * np.linalg.norm(grid, axis=1)
    )
    start = grid[int(np.argmin(values))]
    return _polish(start, inp.losses, inp.lam, inp.gamma)
