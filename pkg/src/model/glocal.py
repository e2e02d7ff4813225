"""Predictions, residual losses, the unified objective and initialization.

The objective is the GLOCAL factorization loss with a self-paced weighting of the
latent-label residual:

    ‖J∘(Y − UV)‖² + α‖√P∘(V − WᵀX)‖²
      + Σ_b [(β₁n_b/n)·tr(FᵀZ_bZ_bᵀF) + β₂·tr(F_bᵀZ_bZ_bᵀF_b)]
      − λΣ‖P_i‖₁ + γΣ‖P_i‖₂ + τ(‖U‖² + ‖V‖² + ‖W‖²)

with F = UWᵀX and F_b its group-b columns.
"""

import logging

import numpy as np

from src.core.errors import ConfigError, ShapeError
from src.partition.types import GroupPartition

from .problem import TrainingProblem
from .types import HyperParams, ModelState, ObjectiveBreakdown, PaceState

logger = logging.getLogger(__name__)


def predict_scores(state: ModelState, features: np.ndarray) -> np.ndarray:
    """Label scores U·Wᵀ·features, l×n'.

    Raises:
        ShapeError: If the feature dimension does not match W.
    """
    features = np.asarray(features, dtype=float)
    if features.ndim != 2 or features.shape[0] != state.W.shape[0]:
        raise ShapeError(
            f"features have {features.shape[0]} rows, model expects {state.W.shape[0]}",
            module="model",
        )
    return state.U @ (state.W.T @ features)


def predict_labels(scores: np.ndarray) -> np.ndarray:
    """Sign of each score, with sign(0) = +1."""
    return np.where(np.asarray(scores) >= 0, 1.0, -1.0)


def residual_loss(state: ModelState, ds, params: HyperParams) -> np.ndarray:
    """Per-entry latent residual α·(V − WᵀX)², k×n."""
    if state.V.shape[1] != ds.n_instances or state.W.shape[0] != ds.n_features:
        raise ShapeError("model blocks do not match the dataset", module="model")
    diff = state.V - state.W.T @ ds.features
    return params.alpha * diff * diff


def evaluate_objective(
    problem: TrainingProblem,
    state: ModelState,
    pace: PaceState,
    check_constraints: bool = True,
) -> ObjectiveBreakdown:
    """Objective breakdown over a prepared ``TrainingProblem``.

    Raises:
        InvariantViolationError: If a Z row is off the unit sphere and constraints are checked.
    """
    if check_constraints:
        state.check_unit_rows()
    params = problem.params
    U, V, W = state.U, state.V, state.W

    recon_res = problem.J * (problem.Y - U @ V)
    latent = W.T @ problem.X
    diff = V - latent

    global_gram = latent @ latent.T
    global_corr = 0.0
    local_corr = 0.0
    for b, z in enumerate(state.Z):
        zu = z.T @ U
        latent_b = latent[:, problem.columns[b]]
        global_corr += problem.global_weights[b] * float(np.sum((zu @ global_gram) * zu))
        local_corr += params.beta2 * float(np.sum((zu @ (latent_b @ latent_b.T)) * zu))

    return ObjectiveBreakdown(
        recon=float(np.sum(recon_res * recon_res)),
        residual=params.alpha * float(np.sum(pace.P * diff * diff)),
        global_corr=global_corr,
        local_corr=local_corr,
        pace_l1=-pace.lam * float(pace.P.sum()),
        pace_l2=pace.gamma * float(np.linalg.norm(pace.P, axis=1).sum()),
        reg=params.tau * float(np.sum(U * U) + np.sum(V * V) + np.sum(W * W)),
    )


def objective(
    state: ModelState,
    pace: PaceState,
    ds,
    part: GroupPartition,
    params: HyperParams,
    check_constraints: bool = True,
) -> ObjectiveBreakdown:
    """Evaluate the unified objective.

    Args:
        state: Model factors.
        pace: Pace weights and parameters.
        ds: Training ``MultiLabelDataset``.
        part: Partition of its instances.
        params: Hyperparameters.
        check_constraints: Verify unit-norm Z rows first.

    Returns:
        Per-term breakdown; ``.total`` is the objective value.
    """
    problem = TrainingProblem(ds, part, params)
    problem.check_state(state, pace)
    return evaluate_objective(problem, state, pace, check_constraints=check_constraints)


def initialize(ds, params: HyperParams, seed: int) -> ModelState:
    """Spectral warm start.

    U and V come from the rank-k truncated SVD of J∘Y, W is the ridge fit of V on X and
    each Z_b is Gaussian with unit rows drawn from ``seed``.

    Raises:
        ConfigError: If k exceeds min(l, n).
    """
    from src.optim.manifold import project_unit_rows

    l, n = ds.n_labels, ds.n_instances
    k = params.k
    if k > min(l, n):
        raise ConfigError(f"k={k} exceeds min(l, n)={min(l, n)}", module="model")

    left, singular, right_t = np.linalg.svd(ds.mask * ds.labels, full_matrices=False)
    root = np.sqrt(singular[:k])
    U = left[:, :k] * root[None, :]
    V = root[:, None] * right_t[:k, :]

    X = ds.features
    if params.tau > 0:
        W = np.linalg.solve(X @ X.T + params.tau * np.eye(X.shape[0]), X @ V.T)
    else:
        W = np.linalg.lstsq(X.T, V.T, rcond=None)[0]

    rng = np.random.default_rng(seed)
    Z = [project_unit_rows(rng.standard_normal((l, params.m))) for _ in range(params.g)]
    logger.debug(f"initialized model: k={k}, m={params.m}, g={params.g}, seed={seed}")
    return ModelState(U=U, V=V, W=W, Z=Z)
