"""Backtracking (Armijo) line search on one block of the model."""

import logging

import numpy as np

from src.core.errors import NumericalError, RangeError
from src.model.glocal import evaluate_objective
from src.model.problem import TrainingProblem
from src.model.types import ModelState, PaceState

from .gradients import grad_U, grad_V, grad_W, grad_Z
from .manifold import project_unit_rows, tangent_project
from .types import OptimConfig

logger = logging.getLogger(__name__)

EUCLIDEAN_BLOCKS = ("V", "U", "W")


def block_ids(g: int) -> list[str]:
    """Block update order of one outer iteration: Z0..Z{g-1}, V, U, W."""
    return [f"Z{b}" for b in range(g)] + list(EUCLIDEAN_BLOCKS)


def _group_of(block: str, g: int) -> int | None:
    if block in EUCLIDEAN_BLOCKS:
        return None
    if block.startswith("Z") and block[1:].isdigit() and int(block[1:]) < g:
        return int(block[1:])
    raise RangeError(f"unknown block {block!r}", module="optim")


def smooth_objective(problem: TrainingProblem, state: ModelState, pace: PaceState) -> float:
    """Objective without the pace regularizer, evaluated off-manifold as well."""
    return evaluate_objective(problem, state, pace, check_constraints=False).smooth


def _replace(state: ModelState, block: str, value: np.ndarray, group: int | None) -> ModelState:
    blocks = {"U": state.U, "V": state.V, "W": state.W}
    Z = list(state.Z)
    if group is None:
        blocks[block] = value
    else:
        Z[group] = value
    return ModelState(U=blocks["U"], V=blocks["V"], W=blocks["W"], Z=Z)


def line_search_step(
    block: str,
    problem: TrainingProblem,
    state: ModelState,
    pace: PaceState,
    cfg: OptimConfig,
) -> tuple[ModelState, float]:
    """Take one projected gradient step on ``block`` with backtracking.

    The step starts at 1.0 and shrinks by ``cfg.backtrack_ratio`` until the objective
    decreases by at least ``armijo_c · step · ‖direction‖²``. Z blocks step along the
    tangent direction and are projected back onto unit rows before evaluation.

    Args:
        block: ``"Z<b>"``, ``"V"``, ``"U"`` or ``"W"``.
        problem: Training problem.
        state: Current model; not modified.
        pace: Current pace (P held fixed).
        cfg: Line-search settings.

    Returns:
        The updated state and the accepted step (0.0 when no step satisfied Armijo or the
        gradient vanished, in which case ``state`` is returned as is).

    Raises:
        NumericalError: If the objective or gradient at ``state`` is not finite.
    """
    group = _group_of(block, problem.g)
    current = smooth_objective(problem, state, pace)
    if not np.isfinite(current):
        raise NumericalError("objective is not finite", block=block)

    if group is not None:
        origin = state.Z[group]
        direction = tangent_project(origin, grad_Z(problem, state, group))
    else:
        origin = getattr(state, block)
        if block == "V":
            direction = grad_V(problem, state, pace)
        elif block == "U":
            direction = grad_U(problem, state)
        else:
            direction = grad_W(problem, state, pace)

    if not np.all(np.isfinite(direction)):
        raise NumericalError("gradient is not finite", block=block)
    norm_sq = float(np.sum(direction * direction))
    if norm_sq == 0.0:
        return state, 0.0

    step = 1.0
    with np.errstate(over="ignore", invalid="ignore"):
        while step >= cfg.min_step:
            moved = origin - step * direction
            if group is not None:
                moved = project_unit_rows(moved)
            candidate = _replace(state, block, moved, group)
            value = smooth_objective(problem, candidate, pace)
            if value <= current - cfg.armijo_c * step * norm_sq:
                return candidate, step
            step *= cfg.backtrack_ratio

    logger.debug(f"line search on {block}: no step satisfied Armijo")
    return state, 0.0
