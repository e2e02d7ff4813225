"""Missing-label masking, train/test splits and feature normalization."""

import logging
import math
from pathlib import Path

import numpy as np

from src.core.errors import ConfigError, ParseError, RangeError
from src.utils.fileio import atomic_write_text

from .types import MultiLabelDataset, NormalizerStats, SplitSpec

logger = logging.getLogger(__name__)


def mask_labels(ds: MultiLabelDataset, rho: float, seed: int) -> MultiLabelDataset:
    """Keep a random ``rho`` fraction of the label entries observed.

    Exactly ``round(rho * l * n)`` cells (half rounds up) are observed, taken from the
    front of a seeded permutation of all l·n cells.

    Raises:
        ConfigError: If rho is outside [0, 1] or the mask is already partial.
    """
    if not 0.0 <= rho <= 1.0:
        raise ConfigError(f"rho must lie in [0, 1], got {rho}", module="data")
    if not np.all(ds.mask == 1.0):
        raise ConfigError("mask_labels expects a fully observed dataset", module="data")

    total = ds.n_labels * ds.n_instances
    observed = int(math.floor(rho * total + 0.5))
    rng = np.random.default_rng(seed)
    cells = rng.permutation(total)[:observed]

    mask = np.zeros(total)
    mask[cells] = 1.0
    logger.debug(f"Masked labels: rho={rho}, observed {observed}/{total}")
    return ds.with_mask(mask.reshape(ds.n_labels, ds.n_instances))


def select_columns(ds: MultiLabelDataset, columns: np.ndarray) -> MultiLabelDataset:
    """Instance subset in the given column order."""
    columns = np.asarray(columns, dtype=int)
    return MultiLabelDataset(
        features=ds.features[:, columns],
        labels=ds.labels[:, columns],
        mask=ds.mask[:, columns],
        feature_names=ds.feature_names,
        label_names=ds.label_names,
    )


def split(ds: MultiLabelDataset, spec: SplitSpec) -> tuple[MultiLabelDataset, MultiLabelDataset]:
    """Partition instances into train and test by a seeded permutation.

    The train side gets ``floor(train_fraction * n)`` instances; both sides keep the
    original column order.

    Raises:
        ConfigError: If either side would be empty.
    """
    n = ds.n_instances
    n_train = int(math.floor(spec.train_fraction * n))
    if n_train == 0 or n_train == n:
        raise ConfigError(
            f"split of {n} instances at fraction {spec.train_fraction} leaves an empty side",
            module="data",
        )
    train_idx, test_idx = split_indices(n, spec)
    return select_columns(ds, train_idx), select_columns(ds, test_idx)


def split_indices(n: int, spec: SplitSpec) -> tuple[np.ndarray, np.ndarray]:
    """Column indices of the train and test sides of ``split``."""
    n_train = int(math.floor(spec.train_fraction * n))
    perm = np.random.default_rng(spec.seed).permutation(n)
    return np.sort(perm[:n_train]), np.sort(perm[n_train:])


def normalize_features(ds: MultiLabelDataset) -> tuple[MultiLabelDataset, NormalizerStats]:
    """Standardize each feature row to zero mean and unit (population) deviation.

    Returns:
        The normalized dataset and the statistics to reapply to held-out data.
    """
    mean = ds.features.mean(axis=1)
    std = ds.features.std(axis=1)
    stats = NormalizerStats(mean=mean, std=std)
    return stats.apply(ds), stats


def write_mask(path: str | Path, ds: MultiLabelDataset) -> Path:
    """Export observed cells, one ``label_idx,instance_idx`` line each (row-major order)."""
    rows, cols = np.nonzero(ds.mask)
    lines = [f"{i},{j}" for i, j in zip(rows.tolist(), cols.tolist())]
    return atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))


def read_mask(path: str | Path, ds: MultiLabelDataset) -> MultiLabelDataset:
    """Apply an exported mask file to a dataset.

    Raises:
        ParseError: Malformed line.
        RangeError: Index outside the dataset.
    """
    mask = np.zeros_like(ds.mask)
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
                raise ParseError(f"malformed mask entry {line!r}", line=line_no)
            i, j = int(parts[0]), int(parts[1])
            if i >= ds.n_labels or j >= ds.n_instances:
                raise RangeError(
                    f"line {line_no}: mask cell ({i},{j}) outside dataset", module="data"
                )
            mask[i, j] = 1.0
    return ds.with_mask(mask)
