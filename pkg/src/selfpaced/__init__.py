"""Self-paced weights: closed-form row solver, verification oracle and annealing."""

from .oracle import oracle_minimize_row
from .schedule import (
    anneal,
    pace_diagnostics,
    solve_pace_rows,
    update_pace,
    update_pace_with_diagnostics,
)
from .solver import row_objective, solve_row
from .types import RowSolution, RowSolveInputs

__all__ = [
    "RowSolution",
    "RowSolveInputs",
    "anneal",
    "oracle_minimize_row",
    "pace_diagnostics",
    "row_objective",
    "solve_pace_rows",
    "solve_row",
    "update_pace",
    "update_pace_with_diagnostics",
]
