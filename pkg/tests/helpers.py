"""Builders for small random problems shared by the test modules."""

import numpy as np

from src.data.types import MultiLabelDataset
from src.model.types import ModelState
from src.optim.manifold import project_unit_rows
from src.partition.types import GroupPartition


def random_dataset(d: int, n: int, l: int, seed: int, rho: float = 0.7) -> MultiLabelDataset:
    """Gaussian features, random ±1 labels and a random partial mask."""
    rng = np.random.default_rng(seed)
    labels = np.where(rng.random((l, n)) < 0.4, 1.0, -1.0)
    mask = (rng.random((l, n)) < rho).astype(float)
    return MultiLabelDataset(features=rng.normal(size=(d, n)), labels=labels, mask=mask)


def random_state(d: int, n: int, l: int, k: int, m: int, g: int, seed: int) -> ModelState:
    rng = np.random.default_rng(seed)
    return ModelState(
        U=rng.normal(size=(l, k)),
        V=rng.normal(size=(k, n)),
        W=rng.normal(size=(d, k)) * 0.5,
        Z=[project_unit_rows(rng.normal(size=(l, m))) for _ in range(g)],
    )


def alternating_partition(n: int, g: int) -> GroupPartition:
    return GroupPartition(assignment=np.arange(n) % g, g=g)


SPARSE_SAMPLE = """#labels: 3 #features: 4
0,2 0:1.0 3:2.5
 1:0.5
1 2:-1.0
"""
