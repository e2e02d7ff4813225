"""Type definitions for block coordinate descent."""

from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import pandas as pd

from src.core.errors import ConfigError
from src.utils.fileio import atomic_write_csv

TRACE_COLUMNS = [
    "iter",
    "objective",
    "recon",
    "residual",
    "global_corr",
    "local_corr",
    "pace_l1",
    "pace_l2",
    "reg",
    "lambda",
    "gamma",
    "mean_p",
]


@dataclass(frozen=True)
class OptimConfig:
    """Outer loop, inner step and line-search settings."""

    max_outer_iters: int = 100
    inner_steps_per_block: int = 5
    armijo_c: float = 1e-4
    backtrack_ratio: float = 0.5
    rel_tol: float = 1e-5
    seed: int = 0
    min_step: float = 1e-12

    def __post_init__(self):
        if self.max_outer_iters < 0:
            raise ConfigError("max_outer_iters must be nonnegative", module="optim")
        if self.inner_steps_per_block < 1:
            raise ConfigError("inner_steps_per_block must be positive", module="optim")
        if not 0 < self.armijo_c < 1:
            raise ConfigError(f"armijo_c must lie in (0, 1), got {self.armijo_c}", module="optim")
        if not 0 < self.backtrack_ratio < 1:
            raise ConfigError(
                f"backtrack_ratio must lie in (0, 1), got {self.backtrack_ratio}", module="optim"
            )
        if not self.rel_tol > 0:
            raise ConfigError(f"rel_tol must be positive, got {self.rel_tol}", module="optim")
        if self.seed < 0:
            raise ConfigError(f"seed must be nonnegative, got {self.seed}", module="optim")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "OptimConfig":
        return cls(**{k: v for k, v in data.items() if k in cls.__dataclass_fields__})


@dataclass
class IterationRecord:
    """State of one completed outer iteration, taken before annealing."""

    iteration: int
    breakdown: dict[str, float]
    lam: float
    gamma: float
    mean_p: float
    block_objectives: dict[str, float] = field(default_factory=dict)
    step_counts: dict[str, int] = field(default_factory=dict)

    @property
    def objective(self) -> float:
        return self.breakdown["total"]

    def to_row(self) -> dict[str, Any]:
        row = {"iter": self.iteration, "objective": self.objective}
        for name in TRACE_COLUMNS[2:9]:
            row[name] = self.breakdown[name]
        row.update({"lambda": self.lam, "gamma": self.gamma, "mean_p": self.mean_p})
        return row


@dataclass
class FitTrace:
    """Per-iteration records of a fit."""

    records: list[IterationRecord] = field(default_factory=list)
    converged: bool = False
    pace_rows: list[dict[str, Any]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def append(self, record: IterationRecord) -> None:
        self.records.append(record)

    @property
    def objectives(self) -> list[float]:
        return [r.objective for r in self.records]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([r.to_row() for r in self.records], columns=TRACE_COLUMNS)

    def write_trace_csv(self, path: str | Path) -> Path:
        return atomic_write_csv(path, self.to_frame())

    def write_pace_csv(self, path: str | Path) -> Path:
        """Per-iteration pace diagnostics (iteration,row,theta1,theta2,nonzero_fraction)."""
        columns = ["iteration", "row", "theta1", "theta2", "nonzero_fraction"]
        return atomic_write_csv(path, pd.DataFrame(self.pace_rows, columns=columns))

    def equals(self, other: "FitTrace") -> bool:
        return self.to_frame().equals(other.to_frame())
