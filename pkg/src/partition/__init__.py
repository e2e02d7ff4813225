"""Instance partitions for local label-correlation terms."""

from .groups import group_columns, read_partition, write_partition
from .kmeans import KMeans, kmeans
from .types import GroupPartition

__all__ = [
    "GroupPartition",
    "KMeans",
    "group_columns",
    "kmeans",
    "read_partition",
    "write_partition",
]
