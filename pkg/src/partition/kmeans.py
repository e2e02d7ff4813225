"""Seeded k-means (k-means++ initialization, Lloyd iterations) over feature columns."""

import logging

import numpy as np

from src.core.errors import ConfigError

from .types import GroupPartition

logger = logging.getLogger(__name__)


class KMeans:
    """Lloyd's algorithm with k-means++ seeding.

    Empty clusters are reseeded with the point farthest from its own center, so every
    group of the returned partition is nonempty.

    Attributes:
        centers_: Final centers, g×d.
        inertia_history_: Sum of squared distances after each center update.
        n_iter_: Lloyd iterations run.
    """

    def __init__(self, g: int, seed: int = 0, max_iters: int = 100):
        """Initialize the estimator.

        Args:
            g: Number of groups.
            seed: Seed for k-means++ initialization.
            max_iters: Upper bound on Lloyd iterations, at least 1.
        """
        self.g = g
        self.seed = seed
        self.max_iters = max_iters
        self.centers_: np.ndarray | None = None
        self.inertia_history_: list[float] = []
        self.n_iter_ = 0

    def fit(self, features: np.ndarray) -> GroupPartition:
        """Cluster the columns of a d×n feature matrix.

        Raises:
            ConfigError: If g is not in 1..n or max_iters is below 1.
        """
        points = np.asarray(features, dtype=float).T
        n = points.shape[0]
        if not 1 <= self.g <= n:
            raise ConfigError(f"g={self.g} must lie in 1..n={n}", module="partition")
        if self.max_iters < 1:
            raise ConfigError(
                f"max_iters must be at least 1, got {self.max_iters}", module="partition"
            )

        rng = np.random.default_rng(self.seed)
        centers = self._init_centers(points, rng)
        assignment: np.ndarray | None = None
        self.inertia_history_ = []

        for iteration in range(self.max_iters):
            distances = _squared_distances(points, centers)
            new_assignment = np.argmin(distances, axis=1)
            new_assignment = self._reseed_empty(new_assignment, distances)
            if assignment is not None and np.array_equal(new_assignment, assignment):
                break
            assignment = new_assignment
            centers = np.vstack([points[assignment == c].mean(axis=0) for c in range(self.g)])
            residual = points - centers[assignment]
            self.inertia_history_.append(float(np.sum(residual * residual)))
            self.n_iter_ = iteration + 1

        self.centers_ = centers
        partition = GroupPartition(assignment=assignment, g=self.g)
        logger.info(f"k-means: g={self.g}, {self.n_iter_} iterations, sizes {partition.sizes}")
        return partition

    def _init_centers(self, points: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        n = points.shape[0]
        chosen = [int(rng.integers(n))]
        closest = np.sum((points - points[chosen[0]]) ** 2, axis=1)
        for _ in range(1, self.g):
            total = closest.sum()
            if total > 0:
                index = int(rng.choice(n, p=closest / total))
            else:
                index = int(rng.integers(n))
            chosen.append(index)
            closest = np.minimum(closest, np.sum((points - points[index]) ** 2, axis=1))
        return points[chosen].copy()

    def _reseed_empty(self, assignment: np.ndarray, distances: np.ndarray) -> np.ndarray:
        assignment = assignment.copy()
        for cluster in range(self.g):
            sizes = np.bincount(assignment, minlength=self.g)
            if sizes[cluster] > 0:
                continue
            own = distances[np.arange(assignment.size), assignment]
            own = np.where(sizes[assignment] > 1, own, -np.inf)
            farthest = int(np.argmax(own))
            logger.warning(f"k-means: cluster {cluster} empty, reseeded with instance {farthest}")
            assignment[farthest] = cluster
        return assignment


def _squared_distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    sq = (
        np.sum(points * points, axis=1)[:, None]
        - 2.0 * points @ centers.T
        + np.sum(centers * centers, axis=1)[None, :]
    )
    return np.maximum(sq, 0.0)


def kmeans(features: np.ndarray, g: int, seed: int = 0, max_iters: int = 100) -> GroupPartition:
    """Partition the columns of ``features`` into ``g`` groups."""
    return KMeans(g=g, seed=seed, max_iters=max_iters).fit(features)
