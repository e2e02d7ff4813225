"""Command-line front end: train, evaluate, experiment, grid search, synth and plots."""

from .commands import (
    PreparedData,
    TrainedModel,
    cmd_evaluate,
    cmd_experiment,
    cmd_gridsearch,
    cmd_plot_radar,
    cmd_plot_trace,
    cmd_synth,
    cmd_train,
    evaluate_model,
    experiment_table,
    grid_cells,
    prepare_data,
    train_model,
)
from .plots import RADAR_AXES, axis_angles, plot_radar, plot_trace, radar_values
from .run_config import GRID_KEYS, MODES, PaceConfig, RunConfig
from .runner import JobResult, JobRunner, JobStatus

__all__ = [
    "GRID_KEYS",
    "JobResult",
    "JobRunner",
    "JobStatus",
    "MODES",
    "PaceConfig",
    "PreparedData",
    "RADAR_AXES",
    "RunConfig",
    "TrainedModel",
    "axis_angles",
    "cmd_evaluate",
    "cmd_experiment",
    "cmd_gridsearch",
    "cmd_plot_radar",
    "cmd_plot_trace",
    "cmd_synth",
    "cmd_train",
    "evaluate_model",
    "experiment_table",
    "grid_cells",
    "plot_radar",
    "plot_trace",
    "prepare_data",
    "radar_values",
    "train_model",
]
