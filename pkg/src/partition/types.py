"""Type definitions for instance partitions."""

from dataclasses import dataclass

import numpy as np

from src.core.errors import ConfigError


@dataclass(frozen=True, eq=False)
class GroupPartition:
    """Assignment of n instances to g nonempty groups."""

    assignment: np.ndarray
    g: int

    def __post_init__(self):
        assignment = np.array(self.assignment, dtype=int, copy=True)
        if assignment.ndim != 1 or assignment.size == 0:
            raise ConfigError("assignment must be a nonempty sequence", module="partition")
        if self.g < 1:
            raise ConfigError(f"group count must be positive, got {self.g}", module="partition")
        if assignment.min() < 0 or assignment.max() >= self.g:
            raise ConfigError(
                f"assignment values must lie in 0..{self.g - 1}", module="partition"
            )
        sizes = np.bincount(assignment, minlength=self.g)
        if np.any(sizes == 0):
            empty = np.flatnonzero(sizes == 0).tolist()
            raise ConfigError(f"groups {empty} are empty", module="partition")
        assignment.setflags(write=False)
        object.__setattr__(self, "assignment", assignment)

    @property
    def n(self) -> int:
        return int(self.assignment.size)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(int(s) for s in np.bincount(self.assignment, minlength=self.g))

    @classmethod
    def single(cls, n: int) -> "GroupPartition":
        """All instances in group 0."""
        return cls(assignment=np.zeros(n, dtype=int), g=1)
