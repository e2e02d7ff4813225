"""Block coordinate descent: gradients, manifold steps, line search and the fit loop."""

from .gradients import finite_difference_gradient, grad_U, grad_V, grad_W, grad_Z
from .line_search import block_ids, line_search_step, smooth_objective
from .manifold import project_unit_rows, tangent_project
from .trainer import fit
from .types import TRACE_COLUMNS, FitTrace, IterationRecord, OptimConfig

__all__ = [
    "TRACE_COLUMNS",
    "FitTrace",
    "IterationRecord",
    "OptimConfig",
    "block_ids",
    "finite_difference_gradient",
    "fit",
    "grad_U",
    "grad_V",
    "grad_W",
    "grad_Z",
    "line_search_step",
    "project_unit_rows",
    "smooth_objective",
    "tangent_project",
]
