"""Exact gradients of the unified objective for each block.

All gradients carry their constant factors so they match finite differences of
``src.model.glocal.evaluate_objective``.
"""

from collections.abc import Callable

import numpy as np

from src.core.errors import RangeError
from src.model.problem import TrainingProblem
from src.model.types import ModelState, PaceState


def _masked_residual(problem: TrainingProblem, state: ModelState) -> np.ndarray:
    return problem.J * (state.U @ state.V - problem.Y)


def grad_Z(problem: TrainingProblem, state: ModelState, b: int) -> np.ndarray:
    """2·U(WᵀC_bW)Uᵀ·Z_b, l×m."""
    if not 0 <= b < problem.g:
        raise RangeError(f"group {b} outside 0..{problem.g - 1}", module="optim")
    problem.check_state(state)
    weight = state.W.T @ (problem.group_weights[b] @ state.W)
    return 2.0 * state.U @ (weight @ (state.U.T @ state.Z[b]))


def grad_V(problem: TrainingProblem, state: ModelState, pace: PaceState) -> np.ndarray:
    """2·[Uᵀ(J∘(UV−Y)) + α·P∘(V−WᵀX) + τV], k×n."""
    problem.check_state(state, pace)
    params = problem.params
    diff = state.V - state.W.T @ problem.X
    return 2.0 * (
        state.U.T @ _masked_residual(problem, state)
        + params.alpha * pace.P * diff
        + params.tau * state.V
    )


def grad_U(problem: TrainingProblem, state: ModelState) -> np.ndarray:
    """2·[(J∘(UV−Y))Vᵀ + τU + Σ_b Z_bZ_bᵀU(WᵀC_bW)], l×k."""
    problem.check_state(state)
    grad = _masked_residual(problem, state) @ state.V.T + problem.params.tau * state.U
    for z, weight in zip(state.Z, problem.latent_grams(state)):
        grad = grad + z @ (z.T @ state.U) @ weight
    return 2.0 * grad


def grad_W(problem: TrainingProblem, state: ModelState, pace: PaceState) -> np.ndarray:
    """2·[αX((XᵀW−Vᵀ)∘Pᵀ) + τW + Σ_b C_bWUᵀZ_bZ_bᵀU], d×k."""
    problem.check_state(state, pace)
    params = problem.params
    X = problem.X
    grad = params.alpha * X @ ((X.T @ state.W - state.V.T) * pace.P.T) + params.tau * state.W
    for z, c in zip(state.Z, problem.group_weights):
        zu = z.T @ state.U
        grad = grad + c @ state.W @ (zu.T @ zu)
    return 2.0 * grad


def finite_difference_gradient(
    f: Callable[[np.ndarray], float], x: np.ndarray, eps: float = 1e-5
) -> np.ndarray:
    """Central-difference gradient of a scalar function of a matrix.

    Args:
        f: Function of an array shaped like ``x``.
        x: Evaluation point; not modified.
        eps: Perturbation size.
    """
    x = np.array(x, dtype=float, copy=True)
    grad = np.zeros_like(x)
    for index in np.ndindex(x.shape):
        original = x[index]
        x[index] = original + eps
        f_plus = f(x)
        x[index] = original - eps
        f_minus = f(x)
        x[index] = original
        grad[index] = (f_plus - f_minus) / (2.0 * eps)
    return grad
