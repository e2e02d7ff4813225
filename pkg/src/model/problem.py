"""Training problem: data, partition and hyperparameters with shared Gram caches."""

import logging
from functools import cached_property

import numpy as np

from src.core.errors import ShapeError
from src.partition.groups import group_columns
from src.partition.types import GroupPartition

from .types import HyperParams, ModelState, PaceState

logger = logging.getLogger(__name__)


class TrainingProblem:
    """Bundles X, Y, J, the group partition and the hyperparameters.

    Caches XXᵀ, the per-group X_bX_bᵀ and the combined group weights
    C_b = (β₁n_b/n)XXᵀ + β₂X_bX_bᵀ used by the objective and every gradient.
    """

    def __init__(self, ds, part: GroupPartition, params: HyperParams):
        """Initialize the problem.

        Args:
            ds: ``MultiLabelDataset`` with the training instances.
            part: Partition of the training instances.
            params: Hyperparameters; ``params.g`` must equal ``part.g``.

        Raises:
            ShapeError: If the partition does not cover the dataset or g disagrees.
        """
        if ds.n_instances != part.n:
            raise ShapeError(
                f"partition covers {part.n} instances, dataset has {ds.n_instances}", module="model"
            )
        if params.g != part.g:
            raise ShapeError(
                f"params.g={params.g} but partition has {part.g} groups", module="model"
            )

        self.ds = ds
        self.part = part
        self.params = params
        self.X = ds.features
        self.Y = ds.labels
        self.J = ds.mask
        self.columns = [group_columns(ds, part, b) for b in range(part.g)]
        self.global_weights = np.array(
            [params.beta1 * cols.size / ds.n_instances for cols in self.columns]
        )

    @property
    def n(self) -> int:
        return self.ds.n_instances

    @property
    def g(self) -> int:
        return self.part.g

    @cached_property
    def gram(self) -> np.ndarray:
        """XXᵀ, d×d."""
        return self.X @ self.X.T

    @cached_property
    def group_grams(self) -> list[np.ndarray]:
        """X_bX_bᵀ per group."""
        return [self.X[:, cols] @ self.X[:, cols].T for cols in self.columns]

    @cached_property
    def group_weights(self) -> list[np.ndarray]:
        """C_b = (β₁n_b/n)XXᵀ + β₂X_bX_bᵀ per group."""
        return [
            w * self.gram + self.params.beta2 * local
            for w, local in zip(self.global_weights, self.group_grams)
        ]

    def check_state(self, state: ModelState, pace: PaceState | None = None) -> None:
        """Raise ShapeError unless every block is conformable with this problem."""
        d, n, l = self.ds.n_features, self.n, self.ds.n_labels
        k, m = self.params.k, self.params.m
        expected = {"U": (l, k), "V": (k, n), "W": (d, k)}
        for name, shape in expected.items():
            actual = getattr(state, name).shape
            if actual != shape:
                raise ShapeError(f"{name} has shape {actual}, expected {shape}", module="model")
        if len(state.Z) != self.g:
            raise ShapeError(
                f"{len(state.Z)} Laplacian factors for {self.g} groups", module="model"
            )
        for b, z in enumerate(state.Z):
            if z.shape != (l, m):
                raise ShapeError(f"Z[{b}] has shape {z.shape}, expected {(l, m)}", module="model")
        if pace is not None and pace.P.shape != (k, n):
            raise ShapeError(f"P has shape {pace.P.shape}, expected {(k, n)}", module="model")

    def latent_grams(self, state: ModelState) -> list[np.ndarray]:
        """WᵀC_bW per group, k×k."""
        return [state.W.T @ (c @ state.W) for c in self.group_weights]
