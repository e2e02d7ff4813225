"""Block coordinate descent over Z_b, V, U, W and the pace weights."""

import logging
import time

from src.core.errors import NumericalError
from src.model.glocal import evaluate_objective, initialize, residual_loss
from src.model.problem import TrainingProblem
from src.model.types import HyperParams, ModelState, PaceState
from src.partition.types import GroupPartition
from src.selfpaced.schedule import anneal, update_pace, update_pace_with_diagnostics

from .line_search import block_ids, line_search_step, smooth_objective
from .types import FitTrace, IterationRecord, OptimConfig

logger = logging.getLogger(__name__)


def _relative_change(before: float, after: float) -> float:
    scale = max(abs(before), abs(after), 1e-300)
    return abs(before - after) / scale


def fit(
    ds,
    part: GroupPartition,
    params: HyperParams,
    pace0: PaceState,
    cfg: OptimConfig,
    init_state: ModelState | None = None,
    pace_dump: bool = False,
) -> tuple[ModelState, PaceState, FitTrace]:
    """Train the model.

    Each outer iteration updates every Z_b, then V, U and W with
    ``cfg.inner_steps_per_block`` line-search steps each, re-solves the pace weights,
    records the iteration and anneals λ and γ. A fixed pace is never re-solved or
    annealed. Training stops once the objective without the pace regularizer changes by
    less than ``cfg.rel_tol`` (relative) across an iteration, or after
    ``cfg.max_outer_iters`` iterations.

    Args:
        ds: Training ``MultiLabelDataset``.
        part: Partition of its instances.
        params: Hyperparameters.
        pace0: Initial pace; for a self-paced fit P is re-solved on the initial residual
            losses before the first iteration.
        cfg: Optimization settings; ``cfg.seed`` seeds the initialization.
        init_state: Start from this model instead of ``initialize``.
        pace_dump: Collect per-row pace diagnostics into ``trace.pace_rows``.

    Returns:
        Final model, final pace and the trace.

    Raises:
        NumericalError: Non-finite values, annotated with the iteration.
    """
    problem = TrainingProblem(ds, part, params)
    state = init_state.copy() if init_state is not None else initialize(ds, params, cfg.seed)
    problem.check_state(state, pace0)
    pace = pace0.copy()
    trace = FitTrace()
    if cfg.max_outer_iters == 0:
        return state, pace, trace

    started = time.perf_counter()
    if not pace.fixed:
        pace = update_pace(pace, residual_loss(state, ds, params))
    blocks = block_ids(params.g)

    for iteration in range(1, cfg.max_outer_iters + 1):
        try:
            before = smooth_objective(problem, state, pace)
            block_objectives: dict[str, float] = {}
            step_counts: dict[str, int] = {}
            for block in blocks:
                accepted = 0
                for _ in range(cfg.inner_steps_per_block):
                    state, step = line_search_step(block, problem, state, pace, cfg)
                    if step == 0.0:
                        break
                    accepted += 1
                step_counts[block] = accepted
                block_objectives[block] = smooth_objective(problem, state, pace)

            if pace_dump:
                pace, rows = update_pace_with_diagnostics(
                    pace, residual_loss(state, ds, params), iteration
                )
                trace.pace_rows.extend(rows)
            else:
                pace = update_pace(pace, residual_loss(state, ds, params))
        except NumericalError as e:
            error = NumericalError(str(e), iteration=iteration, module=e.module)
            error.block = e.block
            raise error from e

        breakdown = evaluate_objective(problem, state, pace)
        trace.append(
            IterationRecord(
                iteration=iteration,
                breakdown=breakdown.to_dict(),
                lam=pace.lam,
                gamma=pace.gamma,
                mean_p=pace.mean_weight,
                block_objectives=block_objectives,
                step_counts=step_counts,
            )
        )
        logger.debug(
            f"iter {iteration}: objective={breakdown.total:.6g} "
            f"lambda={pace.lam:.4g} gamma={pace.gamma:.4g} mean_p={pace.mean_weight:.3f}"
        )

        if _relative_change(before, breakdown.smooth) < cfg.rel_tol:
            trace.converged = True
            break
        pace = anneal(pace)

    logger.info(
        f"fit finished: {len(trace)} iterations, converged={trace.converged}, "
        f"objective={trace.objectives[-1]:.6g}, {time.perf_counter() - started:.2f}s"
    )
    return state, pace, trace
