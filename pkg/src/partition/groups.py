"""Group membership queries and partition files (``instance_idx,group_idx`` lines)."""

from pathlib import Path

import numpy as np

from src.core.errors import ParseError, RangeError, ShapeError
from src.utils.fileio import atomic_write_text

from .types import GroupPartition


def group_columns(ds, part: GroupPartition, b: int) -> np.ndarray:
    """Ascending column indices of the instances assigned to group ``b``.

    Args:
        ds: The ``MultiLabelDataset`` the partition was built for.
        part: Partition of its instances.
        b: Group index.

    Raises:
        RangeError: If b is outside 0..g-1.
        ShapeError: If the partition does not cover the dataset.
    """
    if not 0 <= b < part.g:
        raise RangeError(f"group {b} outside 0..{part.g - 1}", module="partition")
    if ds is not None and ds.n_instances != part.n:
        raise ShapeError(
            f"partition covers {part.n} instances, dataset has {ds.n_instances}", module="partition"
        )
    return np.flatnonzero(part.assignment == b)


def write_partition(path: str | Path, part: GroupPartition) -> Path:
    """Export one ``instance_idx,group_idx`` line per instance."""
    lines = [f"{j},{int(b)}" for j, b in enumerate(part.assignment)]
    return atomic_write_text(path, "\n".join(lines) + "\n")


def read_partition(path: str | Path, n: int) -> GroupPartition:
    """Read a partition file covering exactly ``n`` instances.

    Raises:
        ParseError: Malformed line, or an instance listed twice or missing.
        RangeError: Instance index outside 0..n-1.
    """
    assignment = np.full(n, -1, dtype=int)
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
                raise ParseError(
                    f"malformed partition entry {line!r}", line=line_no, module="partition"
                )
            j, b = int(parts[0]), int(parts[1])
            if j >= n:
                raise RangeError(
                    f"line {line_no}: instance {j} outside 0..{n - 1}", module="partition"
                )
            if assignment[j] >= 0:
                raise ParseError(f"instance {j} assigned twice", line=line_no, module="partition")
            assignment[j] = b
    missing = np.flatnonzero(assignment < 0)
    if missing.size:
        raise ParseError(f"instances without a group: {missing[:10].tolist()}", module="partition")
    return GroupPartition(assignment=assignment, g=int(assignment.max()) + 1)
