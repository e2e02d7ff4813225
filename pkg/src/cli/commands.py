"""Subcommand implementations.

Every run goes through the same pipeline: load (or split) the data, hide labels at ρ,
standardize features on the training side, partition the training instances, initialize
and fit. One run seed drives the split, the mask, k-means and the initialization.
"""

import dataclasses
import itertools
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
import yaml

from src.core.errors import ConfigError, ExperimentError, ShapeError
from src.data.parsers import load_dataset, serialize_sparse
from src.data.synthetic import synthesize
from src.data.transforms import mask_labels, normalize_features, split
from src.data.types import MultiLabelDataset, NormalizerStats, SplitSpec
from src.metrics.report import (
    aggregate,
    evaluate,
    read_report_csv,
    ttest_matrix,
    write_report_csv,
    write_ttest_csv,
)
from src.metrics.types import METRICS, MetricsReport, is_minimized
from src.model.checkpoint import load_checkpoint, save_checkpoint
from src.model.glocal import initialize, predict_scores
from src.model.types import HyperParams, ModelState, PaceState
from src.optim.trainer import fit
from src.optim.types import FitTrace
from src.partition.groups import read_partition
from src.partition.kmeans import kmeans
from src.partition.types import GroupPartition
from src.utils.fileio import atomic_write_csv, atomic_write_text

from .plots import plot_radar, plot_trace
from .run_config import GRID_KEYS, RunConfig
from .runner import JobRunner

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class PreparedData:
    """Training and test sides of one run."""

    train: MultiLabelDataset
    test: MultiLabelDataset
    partition: GroupPartition
    normalizer: NormalizerStats | None


@dataclass(eq=False)
class TrainedModel:
    state: ModelState
    pace: PaceState
    trace: FitTrace
    params: HyperParams


def _format(cfg: RunConfig) -> tuple[str, int | None]:
    return cfg.data["format"], cfg.data["label_count"]


def prepare_data(cfg: RunConfig, seed: int, rho: float | None = None) -> PreparedData:
    """Load, split, mask, normalize and partition for one run seed.

    Raises:
        ConfigError: If no training dataset is configured.
    """
    train_path = cfg.path(cfg.data["train_path"])
    if train_path is None:
        raise ConfigError("data.train_path is not set", module="cli")
    fmt, label_count = _format(cfg)
    train = load_dataset(train_path, fmt=fmt, label_count=label_count)

    test_path = cfg.path(cfg.data["test_path"])
    if test_path is not None:
        test = load_dataset(test_path, fmt=fmt, label_count=label_count)
    else:
        train, test = split(train, SplitSpec(cfg.data["train_fraction"], seed=seed))

    rho = cfg.data["rho"] if rho is None else rho
    if rho < 1.0:
        train = mask_labels(train, rho, seed)

    normalizer = None
    if cfg.data["normalize"]:
        train, normalizer = normalize_features(train)
        test = normalizer.apply(test)

    g = cfg.model["g"]
    if cfg.data["partition"] == "file":
        partition = read_partition(cfg.path(cfg.data["partition_file"]), train.n_instances)
        if partition.g != g:
            raise ConfigError(
                f"partition file has {partition.g} groups, model.g is {g}", module="cli"
            )
    else:
        partition = kmeans(train.features, g, seed=seed, max_iters=cfg.data["kmeans_max_iters"])
    return PreparedData(train=train, test=test, partition=partition, normalizer=normalizer)


def train_model(
    cfg: RunConfig,
    data: PreparedData,
    seed: int,
    mode: str | None = None,
    pace_overrides: dict[str, float] | None = None,
) -> TrainedModel:
    """Initialize and fit one model on prepared data."""
    params = cfg.hyperparams(data.train.n_labels)
    run_cfg = cfg.with_overrides(pace=pace_overrides) if pace_overrides else cfg
    pace0 = run_cfg.pace_state(params.k, data.train.n_instances, mode=mode)
    optim = dataclasses.replace(cfg.optim, seed=seed)
    state = initialize(data.train, params, seed)
    state, pace, trace = fit(
        data.train,
        data.partition,
        params,
        pace0,
        optim,
        init_state=state,
        pace_dump=bool(cfg.output["pace_dump"]),
    )
    return TrainedModel(state=state, pace=pace, trace=trace, params=params)


def check_compatible(state: ModelState, test: MultiLabelDataset) -> None:
    """Raise ShapeError when a dataset does not fit the model's d and l."""
    if state.W.shape[0] != test.n_features or state.U.shape[0] != test.n_labels:
        raise ShapeError(
            f"model expects d={state.W.shape[0]}, l={state.U.shape[0]}; "
            f"dataset has d={test.n_features}, l={test.n_labels}",
            module="cli",
        )


def evaluate_model(
    state: ModelState, test: MultiLabelDataset, seed: int | None = None
) -> MetricsReport:
    """Score a test set against its full label matrix."""
    check_compatible(state, test)
    return evaluate(predict_scores(state, test.features), test.labels, seed=seed)


def _write_manifest(path: Path, payload: dict[str, Any]) -> Path:
    return atomic_write_text(path, yaml.safe_dump(payload, sort_keys=False))


def cmd_train(cfg: RunConfig) -> Path:
    """Train one model; write checkpoint, trace, held-out report and manifest.

    Returns:
        The output directory.
    """
    out = cfg.output_dir
    seed = cfg.seeds[0]
    started = time.perf_counter()
    data = prepare_data(cfg, seed)
    trained = train_model(cfg, data, seed)

    save_checkpoint(out / "checkpoint.json", trained.state, trained.params, data.normalizer)
    trained.trace.write_trace_csv(out / "trace.csv")
    if cfg.output["pace_dump"]:
        trained.trace.write_pace_csv(out / "pace.csv")
    write_report_csv(out / "report.csv", evaluate_model(trained.state, data.test, seed))

    _write_manifest(
        out / "manifest.yaml",
        {
            "command": "train",
            "mode": cfg.mode,
            "seed": seed,
            "wall_time_seconds": round(time.perf_counter() - started, 3),
            "iterations": len(trained.trace),
            "converged": bool(trained.trace.converged),
            "dims": trained.state.dims,
            "config": cfg.to_dict(),
        },
    )
    logger.info(f"train finished: artifacts in {out}")
    return out


def cmd_evaluate(
    checkpoint_path: str | Path,
    dataset_path: str | Path,
    out_path: str | Path,
    fmt: str = "auto",
    label_count: int | None = None,
) -> MetricsReport:
    """Evaluate a checkpoint on a test dataset and write the report CSV."""
    checkpoint = load_checkpoint(checkpoint_path)
    test = load_dataset(dataset_path, fmt=fmt, label_count=label_count)
    check_compatible(checkpoint.state, test)
    if checkpoint.normalizer is not None:
        test = checkpoint.normalizer.apply(test)
    report = evaluate_model(checkpoint.state, test)
    write_report_csv(out_path, report)
    logger.info(f"report written to {out_path}")
    return report


def _method_names(methods: list[str]) -> list[str]:
    names, seen = [], {}
    for method in methods:
        seen[method] = seen.get(method, 0) + 1
        names.append(method if seen[method] == 1 else f"{method}#{seen[method]}")
    return names


def _rho_tag(rho: float) -> str:
    return f"{rho:g}"


def _run_cell(
    cfg: RunConfig, seed: int, rho: float, methods: list[str]
) -> dict[str, MetricsReport]:
    data = prepare_data(cfg, seed, rho=rho)
    reports = {}
    for name, mode in zip(_method_names(methods), methods):
        trained = train_model(cfg, data, seed, mode=mode)
        reports[name] = evaluate_model(trained.state, data.test, seed)
    return reports


def _raise_first_failure(results) -> None:
    for result in results:
        if not result.is_success:
            seed = result.job_id.split(":")[-1]
            raise ExperimentError(
                str(result.error), seed=int(seed) if seed.isdigit() else None
            ) from result.error


def experiment_table(
    reports: dict[float, dict[str, MetricsReport]], ttests: dict[float, pd.DataFrame]
) -> pd.DataFrame:
    """``rho,metric,<method>...,verdict`` with ``mean ± std`` cells."""
    rows = []
    for rho, by_method in reports.items():
        names = list(by_method)
        ttest = ttests.get(rho)
        for metric in METRICS:
            row: dict[str, Any] = {"rho": rho, "metric": metric}
            for name in names:
                report = by_method[name]
                row[name] = f"{report.mean(metric):.4f} ± {report.std(metric):.4f}"
            verdict = ""
            if len(names) >= 2 and ttest is not None and not ttest.empty:
                first = ttest[
                    (ttest["method_a"] == names[0])
                    & (ttest["method_b"] == names[1])
                    & (ttest["metric"] == metric)
                ]
                verdict = first["verdict"].iloc[0] if not first.empty else ""
            row["verdict"] = verdict
            rows.append(row)
    return pd.DataFrame(rows)


def cmd_experiment(cfg: RunConfig, workers: int = 1) -> Path:
    """Multi-seed comparison of the configured methods at every ρ."""
    out = cfg.output_dir
    methods = list(cfg.experiment["methods"])
    if len(methods) < 1:
        raise ConfigError("experiment.methods is empty", module="cli")
    names = _method_names(methods)
    runner = JobRunner(workers)

    reports: dict[float, dict[str, MetricsReport]] = {}
    ttests: dict[float, pd.DataFrame] = {}
    for rho in cfg.experiment["rhos"]:
        jobs = [
            (f"rho={_rho_tag(rho)}:{seed}", lambda s=seed, r=rho: _run_cell(cfg, s, r, methods))
            for seed in cfg.seeds
        ]
        results = runner.run(jobs)
        _raise_first_failure(results)

        by_method = {
            name: aggregate([result.value[name] for result in results]) for name in names
        }
        reports[rho] = by_method
        for name, report in by_method.items():
            tag = name.replace("#", "_")
            write_report_csv(out / f"report_rho{_rho_tag(rho)}_{tag}.csv", report)

        if len(cfg.seeds) >= 2 and len(names) >= 2:
            ttests[rho] = ttest_matrix(by_method, alpha=cfg.experiment["alpha"])
        else:
            logger.warning("t-tests need at least two seeds and two methods; skipped")
            ttests[rho] = ttest_matrix({}, alpha=cfg.experiment["alpha"])
        write_ttest_csv(out / f"ttest_rho{_rho_tag(rho)}.csv", ttests[rho])

    atomic_write_csv(out / "table.csv", experiment_table(reports, ttests))
    _write_manifest(
        out / "manifest.yaml",
        {"command": "experiment", "methods": names, "seeds": cfg.seeds, "config": cfg.to_dict()},
    )
    logger.info(f"experiment finished: {len(cfg.seeds)} seeds, artifacts in {out}")
    return out


def grid_cells(cfg: RunConfig) -> list[dict[str, float]]:
    """Cartesian product of the pace grids, in grid order.

    Raises:
        ConfigError: If any grid is empty.
    """
    grids = [list(cfg.gridsearch[key]) for key in GRID_KEYS]
    for key, values in zip(GRID_KEYS, grids):
        if not values:
            raise ConfigError(f"gridsearch.{key} is empty", module="cli")
    return [dict(zip(GRID_KEYS, values)) for values in itertools.product(*grids)]


def cmd_gridsearch(cfg: RunConfig, workers: int = 1) -> pd.DataFrame:
    """Train and evaluate every pace-grid cell at the first seed; CSV sorted by metric."""
    cells = grid_cells(cfg)
    seed = cfg.seeds[0]
    data = prepare_data(cfg, seed)

    def run_cell(cell: dict[str, float]) -> dict[str, Any]:
        trained = train_model(cfg, data, seed, mode="spmld", pace_overrides=cell)
        report = evaluate_model(trained.state, data.test, seed)
        return {**cell, **{metric: report.mean(metric) for metric in METRICS}}

    results = JobRunner(workers).run(
        [(f"cell-{i}:{seed}", lambda c=cell: run_cell(c)) for i, cell in enumerate(cells)]
    )
    _raise_first_failure(results)

    metric = cfg.gridsearch["sort_metric"]
    sign = 1.0 if is_minimized(metric) else -1.0
    rows = sorted((r.value for r in results), key=lambda row: sign * row[metric])
    frame = pd.DataFrame(rows, columns=[*GRID_KEYS, *METRICS])
    atomic_write_csv(cfg.output_dir / "gridsearch.csv", frame)
    logger.info(f"grid search finished: {len(cells)} cells")
    return frame


def cmd_plot_radar(report_paths: list[str | Path], out_path: str | Path, title: str = "") -> Path:
    """Radar chart of report CSVs; each method is named after its file stem."""
    reports = {Path(p).stem: read_report_csv(p) for p in report_paths}
    return plot_radar(reports, out_path, title=title)


def cmd_plot_trace(trace_path: str | Path, out_path: str | Path) -> Path:
    return plot_trace(pd.read_csv(trace_path), out_path)


def cmd_synth(
    out_dir: str | Path,
    d: int,
    n: int,
    l: int,
    k: int,
    g: int,
    noise_rate: float,
    hard_fraction: float,
    seed: int,
) -> Path:
    """Write a synthetic dataset, its generating model and a hardness manifest."""
    out = Path(out_dir)
    ds, truth = synthesize(d, n, l, k, g, noise_rate, hard_fraction, seed)
    atomic_write_text(out / "data.txt", serialize_sparse(ds))
    save_checkpoint(out / "truth.json", truth.state, HyperParams(k=k, m=k, g=g))
    _write_manifest(
        out / "manifest.yaml",
        {
            "command": "synth",
            "params": {
                "d": d,
                "n": n,
                "l": l,
                "k": k,
                "g": g,
                "noise_rate": noise_rate,
                "hard_fraction": hard_fraction,
                "seed": seed,
            },
            "hard_instances": np.asarray(truth.hard_instances).tolist(),
            "flipped_labels": truth.flip_count,
            "clusters": np.asarray(truth.clusters).tolist(),
        },
    )
    logger.info(f"synthetic dataset written to {out}")
    return out
