"""GLOCAL host model with self-paced latent-label weights."""

from .checkpoint import Checkpoint, load_checkpoint, save_checkpoint
from .glocal import (
    evaluate_objective,
    initialize,
    objective,
    predict_labels,
    predict_scores,
    residual_loss,
)
from .problem import TrainingProblem
from .types import HyperParams, ModelState, ObjectiveBreakdown, PaceState

__all__ = [
    "Checkpoint",
    "HyperParams",
    "ModelState",
    "ObjectiveBreakdown",
    "PaceState",
    "TrainingProblem",
    "evaluate_objective",
    "initialize",
    "load_checkpoint",
    "objective",
    "predict_labels",
    "predict_scores",
    "residual_loss",
    "save_checkpoint",
]
