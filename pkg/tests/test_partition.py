"""Test k-means partitioning and partition files."""

import numpy as np
import pytest
from helpers import random_dataset

from src.core.errors import ConfigError, ParseError, RangeError, ShapeError
from src.partition import (
    GroupPartition,
    KMeans,
    group_columns,
    kmeans,
    read_partition,
    write_partition,
)


def blobs(per_blob: int = 10, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Three well separated clusters in 2-D, as a 2×n feature matrix."""
    rng = np.random.default_rng(seed)
    centers = np.array([[0.0, 0.0], [50.0, 0.0], [0.0, 50.0]])
    membership = np.repeat(np.arange(3), per_blob)
    points = centers[membership] + rng.normal(scale=0.5, size=(membership.size, 2))
    return points.T, membership


class TestGroupPartition:
    """Test partition invariants."""

    def test_sizes(self):
        part = GroupPartition(assignment=[0, 1, 1, 2, 0], g=3)
        assert part.n == 5
        assert part.sizes == (2, 2, 1)

    def test_empty_group_rejected(self):
        with pytest.raises(ConfigError, match="empty"):
            GroupPartition(assignment=[0, 0, 2], g=3)

    def test_out_of_range_rejected(self):
        with pytest.raises(ConfigError):
            GroupPartition(assignment=[0, 3], g=2)

    def test_single(self):
        assert GroupPartition.single(4).sizes == (4,)


class TestKMeans:
    """Test seeded k-means."""

    def test_recovers_separated_blobs(self):
        features, membership = blobs()
        part = kmeans(features, 3, seed=0)
        for blob in range(3):
            assigned = set(part.assignment[membership == blob].tolist())
            assert len(assigned) == 1
        assert len(set(part.assignment.tolist())) == 3

    def test_inertia_non_increasing(self):
        rng = np.random.default_rng(4)
        estimator = KMeans(g=4, seed=1)
        estimator.fit(rng.normal(size=(3, 60)))
        history = estimator.inertia_history_
        assert len(history) >= 1
        assert all(b <= a + 1e-9 for a, b in zip(history, history[1:]))
        assert estimator.centers_.shape == (4, 3)

    def test_deterministic(self):
        features, _ = blobs(seed=2)
        first = kmeans(features, 3, seed=5)
        second = kmeans(features, 3, seed=5)
        np.testing.assert_array_equal(first.assignment, second.assignment)

    def test_one_group_per_point(self):
        rng = np.random.default_rng(0)
        part = kmeans(rng.normal(size=(2, 6)), 6, seed=0)
        assert part.sizes == (1,) * 6

    def test_identical_points_still_fill_groups(self):
        """Empty clusters are reseeded so every group is used."""
        part = kmeans(np.ones((2, 5)), 2, seed=0)
        assert min(part.sizes) >= 1

    def test_too_many_groups(self):
        with pytest.raises(ConfigError, match="g=4"):
            kmeans(np.zeros((2, 3)), 4)

    def test_zero_iterations_rejected(self):
        with pytest.raises(ConfigError, match="max_iters"):
            kmeans(np.zeros((2, 3)), 2, max_iters=0)


class TestGroupColumns:
    """Test group membership queries."""

    def test_columns_ascending(self):
        ds = random_dataset(3, 6, 2, seed=0)
        part = GroupPartition(assignment=[1, 0, 1, 0, 1, 1], g=2)
        np.testing.assert_array_equal(group_columns(ds, part, 0), [1, 3])
        np.testing.assert_array_equal(group_columns(ds, part, 1), [0, 2, 4, 5])

    def test_bad_group(self):
        ds = random_dataset(3, 6, 2, seed=0)
        with pytest.raises(RangeError):
            group_columns(ds, GroupPartition.single(6), 1)

    def test_size_mismatch(self):
        ds = random_dataset(3, 6, 2, seed=0)
        with pytest.raises(ShapeError):
            group_columns(ds, GroupPartition.single(5), 0)


class TestPartitionFile:
    """Test the instance_idx,group_idx file format."""

    def test_write_then_read(self, tmp_path):
        part = GroupPartition(assignment=[2, 0, 1, 1], g=3)
        path = write_partition(tmp_path / "groups.csv", part)
        assert path.read_text() == "0,2\n1,0\n2,1\n3,1\n"
        np.testing.assert_array_equal(read_partition(path, 4).assignment, part.assignment)

    def test_missing_instance(self, tmp_path):
        path = tmp_path / "groups.csv"
        path.write_text("0,0\n2,1\n")
        with pytest.raises(ParseError, match="without a group"):
            read_partition(path, 3)

    def test_duplicate_instance(self, tmp_path):
        path = tmp_path / "groups.csv"
        path.write_text("0,0\n0,1\n")
        with pytest.raises(ParseError, match="line 2"):
            read_partition(path, 2)

    def test_instance_out_of_range(self, tmp_path):
        path = tmp_path / "groups.csv"
        path.write_text("0,0\n5,0\n")
        with pytest.raises(RangeError):
            read_partition(path, 2)
