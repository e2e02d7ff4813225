"""Pace-weight updates and the λ/γ annealing schedule."""

import logging
from typing import Any

import numpy as np

from src.core.errors import ShapeError
from src.model.types import PaceState

from .solver import solve_row
from .types import RowSolution, RowSolveInputs

logger = logging.getLogger(__name__)


def solve_pace_rows(pace: PaceState, losses: np.ndarray) -> list[RowSolution]:
    """Solve every row of ``losses`` at the current λ and γ.

    Raises:
        ShapeError: If losses and P differ in shape.
        DomainError: If a loss is non-finite or negative.
    """
    losses = np.asarray(losses, dtype=float)
    if losses.shape != pace.P.shape:
        raise ShapeError(
            f"losses have shape {losses.shape}, pace weights {pace.P.shape}", module="selfpaced"
        )
    return [solve_row(RowSolveInputs(row, pace.lam, pace.gamma)) for row in losses]


def _with_solutions(pace: PaceState, solutions: list[RowSolution]) -> PaceState:
    P = np.vstack([s.weights for s in solutions]) if solutions else pace.P.copy()
    updated = pace.copy()
    updated.P = P.reshape(pace.P.shape)
    return updated


def update_pace(pace: PaceState, losses: np.ndarray) -> PaceState:
    """Replace each row of P by its optimal weights; λ and γ are unchanged.

    A fixed pace is returned unchanged.
    """
    if pace.fixed:
        return pace.copy()
    return _with_solutions(pace, solve_pace_rows(pace, losses))


def update_pace_with_diagnostics(
    pace: PaceState, losses: np.ndarray, iteration: int
) -> tuple[PaceState, list[dict[str, Any]]]:
    """``update_pace`` that also returns the per-row diagnostic records."""
    if pace.fixed:
        return pace.copy(), []
    solutions = solve_pace_rows(pace, losses)
    return _with_solutions(pace, solutions), pace_diagnostics(solutions, iteration)


def pace_diagnostics(solutions: list[RowSolution], iteration: int) -> list[dict[str, Any]]:
    """One ``iteration,row,theta1,theta2,nonzero_fraction`` record per row."""
    return [
        {
            "iteration": iteration,
            "row": i,
            "theta1": s.theta1,
            "theta2": s.theta2,
            "nonzero_fraction": s.nonzero_fraction,
        }
        for i, s in enumerate(solutions)
    ]


def anneal(pace: PaceState) -> PaceState:
    """λ ← λ·μ₁, γ ← γ·μ₂; P unchanged. A fixed pace is returned unchanged."""
    updated = pace.copy()
    if not pace.fixed:
        updated.lam = pace.lam * pace.mu1
        updated.gamma = pace.gamma * pace.mu2
    return updated
