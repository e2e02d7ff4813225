"""Run configuration: ``config/main.yaml`` defaults merged with a run file and CLI flags."""

import copy
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from src.core.config import deep_merge, get_run_defaults, load_yaml_file
from src.core.errors import ConfigError
from src.metrics.types import METRICS
from src.model.types import DEFAULT_LATENT_CAP, HyperParams, PaceState
from src.optim.types import OptimConfig

logger = logging.getLogger(__name__)

MODES = ("spmld", "glocal")
PARTITION_METHODS = ("kmeans", "file")
GRID_KEYS = ("lambda0", "gamma0", "mu1", "mu2")


@dataclass(frozen=True)
class PaceConfig:
    """Initial pace parameters and annealing ratios."""

    lambda0: float = 0.1
    gamma0: float = 1.0
    mu1: float = 1.2
    mu2: float = 0.9

    def __post_init__(self):
        if not self.lambda0 > 0:
            raise ConfigError(f"pace.lambda0 must be positive, got {self.lambda0}", module="config")
        if self.gamma0 < 0:
            raise ConfigError(
                f"pace.gamma0 must be nonnegative, got {self.gamma0}", module="config"
            )
        if self.mu1 < 1:
            raise ConfigError(f"pace.mu1 must be >= 1, got {self.mu1}", module="config")
        if not 0 < self.mu2 <= 1:
            raise ConfigError(f"pace.mu2 must lie in (0, 1], got {self.mu2}", module="config")

    def initial_state(self, k: int, n: int) -> PaceState:
        return PaceState.initial(k, n, self.lambda0, self.gamma0, self.mu1, self.mu2)


@dataclass
class RunConfig:
    """Fully resolved and validated run settings.

    ``resolved`` keeps the merged mapping for manifests.
    """

    data: dict[str, Any]
    model: dict[str, Any]
    pace: PaceConfig
    optim: OptimConfig
    mode: str
    seeds: list[int]
    experiment: dict[str, Any]
    gridsearch: dict[str, Any]
    output: dict[str, Any]
    resolved: dict[str, Any] = field(default_factory=dict)
    base_dir: Path = field(default_factory=Path.cwd)

    @classmethod
    def from_dict(cls, raw: dict[str, Any], base_dir: str | Path | None = None) -> "RunConfig":
        """Merge ``raw`` over the defaults and validate every section.

        Raises:
            ConfigError: On unknown keys or invalid values.
        """
        resolved = deep_merge(get_run_defaults(), raw or {})
        config = cls(
            data=resolved["data"],
            model=resolved["model"],
            pace=PaceConfig(**resolved["pace"]),
            optim=OptimConfig(**resolved["optim"]),
            mode=resolved["mode"],
            seeds=list(resolved["seeds"]),
            experiment=resolved["experiment"],
            gridsearch=resolved["gridsearch"],
            output=resolved["output"],
            resolved=resolved,
            base_dir=Path(base_dir) if base_dir is not None else Path.cwd(),
        )
        config.validate()
        return config

    @classmethod
    def load(cls, path: str | Path | None = None) -> "RunConfig":
        """Load a run file (or just the defaults). Relative paths resolve against its folder."""
        if path is None:
            return cls.from_dict({})
        path = Path(path)
        return cls.from_dict(load_yaml_file(path), base_dir=path.parent)

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}", module="config")
        if not self.seeds or any(not isinstance(s, int) or s < 0 for s in self.seeds):
            raise ConfigError(
                "seeds must be a nonempty list of nonnegative integers", module="config"
            )
        data = self.data
        if not 0.0 <= float(data["rho"]) <= 1.0:
            raise ConfigError(f"data.rho must lie in [0, 1], got {data['rho']}", module="config")
        if not 0.0 < float(data["train_fraction"]) < 1.0:
            raise ConfigError("data.train_fraction must lie strictly in (0, 1)", module="config")
        if data["partition"] not in PARTITION_METHODS:
            raise ConfigError(
                f"data.partition must be one of {PARTITION_METHODS}, got {data['partition']!r}",
                module="config",
            )
        if int(data["kmeans_max_iters"]) < 1:
            raise ConfigError("data.kmeans_max_iters must be at least 1", module="config")
        if data["partition"] == "file" and not data["partition_file"]:
            raise ConfigError(
                "data.partition_file is required for partition: file", module="config"
            )
        HyperParams.with_defaults(DEFAULT_LATENT_CAP, **self.model)
        for rho in self.experiment["rhos"]:
            if not 0.0 <= float(rho) <= 1.0:
                raise ConfigError(f"experiment.rhos entry {rho} outside [0, 1]", module="config")
        for method in self.experiment["methods"]:
            if method not in MODES:
                raise ConfigError(f"experiment.methods entry {method!r} unknown", module="config")
        if not 0.0 < float(self.experiment["alpha"]) < 1.0:
            raise ConfigError("experiment.alpha must lie in (0, 1)", module="config")
        if self.gridsearch["sort_metric"] not in METRICS:
            raise ConfigError(
                f"gridsearch.sort_metric must be one of {METRICS}", module="config"
            )

    def hyperparams(self, n_labels: int) -> HyperParams:
        """HyperParams with k and m defaulted against the label count."""
        return HyperParams.with_defaults(n_labels, **self.model)

    def pace_state(self, k: int, n: int, mode: str | None = None) -> PaceState:
        """Initial pace for a mode; glocal runs with the frozen all-ones pace."""
        if (mode or self.mode) == "glocal":
            return PaceState.frozen(k, n)
        return self.pace.initial_state(k, n)

    def path(self, value: str | None) -> Path | None:
        """Resolve a configured path against the run file's folder."""
        if value is None:
            return None
        path = Path(value)
        return path if path.is_absolute() else self.base_dir / path

    @property
    def output_dir(self) -> Path:
        return self.path(self.output["dir"])

    def with_overrides(
        self,
        seed: int | None = None,
        out: str | None = None,
        mode: str | None = None,
        rho: float | None = None,
        pace: dict[str, float] | None = None,
    ) -> "RunConfig":
        """Apply command-line flags on top of the loaded config."""
        resolved = copy.deepcopy(self.resolved)
        if seed is not None:
            resolved["seeds"] = [seed]
            resolved["optim"]["seed"] = seed
        if out is not None:
            resolved["output"]["dir"] = str(Path(out).absolute())
        if mode is not None:
            resolved["mode"] = mode
        if rho is not None:
            resolved["data"]["rho"] = rho
            resolved["experiment"]["rhos"] = [rho]
        if pace:
            resolved["pace"].update(pace)
        return RunConfig.from_dict(resolved, base_dir=self.base_dir)

    def to_dict(self) -> dict[str, Any]:
        return copy.deepcopy(self.resolved)
