"""Type definitions for multi-label datasets."""

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from src.core.errors import ConfigError, DatasetError


def _frozen_array(values: Any, dtype: Any) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class MultiLabelDataset:
    """Features, ±1 labels and the observation mask of a multi-label dataset.

    Columns are instances: ``features`` is d×n, ``labels`` and ``mask`` are l×n.
    Arrays are copied on construction and made read-only.
    """

    features: np.ndarray
    labels: np.ndarray
    mask: np.ndarray
    feature_names: tuple[str, ...] | None = None
    label_names: tuple[str, ...] | None = None

    def __post_init__(self):
        features = _frozen_array(self.features, float)
        labels = _frozen_array(self.labels, float)
        mask = _frozen_array(self.mask, float)

        if features.ndim != 2 or labels.ndim != 2 or mask.ndim != 2:
            raise DatasetError("features, labels and mask must be matrices", module="data")
        d, n = features.shape
        l, n_labels = labels.shape
        if d < 1 or n < 1 or l < 1:
            raise DatasetError(f"empty dataset (d={d}, n={n}, l={l})", module="data")
        if n_labels != n or mask.shape[1] != n:
            raise DatasetError(
                f"instance counts disagree: features {n}, labels {n_labels}, mask {mask.shape[1]}",
                module="data",
            )
        if mask.shape[0] != l:
            raise DatasetError(
                f"label counts disagree: labels {l}, mask {mask.shape[0]}", module="data"
            )
        if not np.all((labels == 1.0) | (labels == -1.0)):
            raise DatasetError("label entries must be -1 or +1", module="data")
        if not np.all((mask == 0.0) | (mask == 1.0)):
            raise DatasetError("mask entries must be 0 or 1", module="data")
        if self.feature_names is not None and len(self.feature_names) != d:
            raise DatasetError("feature_names length must equal d", module="data")
        if self.label_names is not None and len(self.label_names) != l:
            raise DatasetError("label_names length must equal l", module="data")

        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "mask", mask)
        if self.feature_names is not None:
            object.__setattr__(self, "feature_names", tuple(self.feature_names))
        if self.label_names is not None:
            object.__setattr__(self, "label_names", tuple(self.label_names))

    @property
    def n_features(self) -> int:
        return self.features.shape[0]

    @property
    def n_instances(self) -> int:
        return self.features.shape[1]

    @property
    def n_labels(self) -> int:
        return self.labels.shape[0]

    @property
    def observed_count(self) -> int:
        return int(self.mask.sum())

    def with_mask(self, mask: np.ndarray) -> "MultiLabelDataset":
        """Return a copy with a different observation mask."""
        return MultiLabelDataset(
            features=self.features,
            labels=self.labels,
            mask=mask,
            feature_names=self.feature_names,
            label_names=self.label_names,
        )

    def with_features(self, features: np.ndarray) -> "MultiLabelDataset":
        """Return a copy with replaced features (same d)."""
        return MultiLabelDataset(
            features=features,
            labels=self.labels,
            mask=self.mask,
            feature_names=self.feature_names,
            label_names=self.label_names,
        )

    def equals(self, other: "MultiLabelDataset") -> bool:
        """Exact equality of all matrices and names."""
        return (
            np.array_equal(self.features, other.features)
            and np.array_equal(self.labels, other.labels)
            and np.array_equal(self.mask, other.mask)
            and self.feature_names == other.feature_names
            and self.label_names == other.label_names
        )

    def summary(self) -> dict[str, Any]:
        """Shape statistics for logs and manifests."""
        positives = (self.labels > 0).sum()
        return {
            "d": self.n_features,
            "n": self.n_instances,
            "l": self.n_labels,
            "labels_per_instance": float(positives) / self.n_instances,
            "observed_fraction": self.observed_count / (self.n_labels * self.n_instances),
        }


@dataclass(frozen=True)
class SplitSpec:
    """Train/test split settings."""

    train_fraction: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError(
                f"train_fraction must be strictly between 0 and 1, got {self.train_fraction}",
                module="data",
            )
        if self.seed < 0:
            raise ConfigError(f"seed must be nonnegative, got {self.seed}", module="data")


@dataclass(frozen=True, eq=False)
class NormalizerStats:
    """Per-feature shift and scale learned on training instances."""

    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mean", _frozen_array(self.mean, float))
        object.__setattr__(self, "std", _frozen_array(self.std, float))

    def apply_matrix(self, features: np.ndarray) -> np.ndarray:
        """Standardize a d×n feature matrix; zero-variance rows become zero."""
        if features.shape[0] != self.mean.shape[0]:
            raise DatasetError(
                f"normalizer expects {self.mean.shape[0]} features, got {features.shape[0]}",
                module="data",
            )
        safe_std = np.where(self.std > 0, self.std, 1.0)
        scaled = (features - self.mean[:, None]) / safe_std[:, None]
        scaled[self.std == 0, :] = 0.0
        return scaled

    def apply(self, ds: MultiLabelDataset) -> MultiLabelDataset:
        """Standardize a dataset with these statistics."""
        return ds.with_features(self.apply_matrix(ds.features))

    def to_dict(self) -> dict[str, Any]:
        return {"mean": self.mean.tolist(), "std": self.std.tolist()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "NormalizerStats":
        return cls(
            mean=np.asarray(data["mean"], dtype=float), std=np.asarray(data["std"], dtype=float)
        )


@dataclass(eq=False)
class SyntheticTruth:
    """Ground truth of a synthetic dataset.

    ``state`` is a ``src.model.types.ModelState``; kept untyped here so the data
    package does not import the model package.
    """

    state: Any
    clean_labels: np.ndarray
    hard_instances: np.ndarray
    clusters: np.ndarray
    flipped: np.ndarray = field(default_factory=lambda: np.zeros((0, 0), dtype=bool))

    @property
    def flip_count(self) -> int:
        return int(self.flipped.sum())
