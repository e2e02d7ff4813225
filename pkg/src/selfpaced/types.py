"""Type definitions for the per-row pace-weight problem."""

from dataclasses import dataclass

import numpy as np

from src.core.errors import DomainError


@dataclass(frozen=True, eq=False)
class RowSolveInputs:
    """One latent-label row of residual losses with the current pace parameters."""

    losses: np.ndarray
    lam: float
    gamma: float

    def __post_init__(self):
        losses = np.array(self.losses, dtype=float, copy=True).reshape(-1)
        if not np.all(np.isfinite(losses)):
            raise DomainError("losses must be finite", module="selfpaced")
        if np.any(losses < 0):
            raise DomainError("losses must be nonnegative", module="selfpaced")
        if not np.isfinite(self.lam) or self.lam <= 0:
            raise DomainError(f"lambda must be positive, got {self.lam}", module="selfpaced")
        if not np.isfinite(self.gamma) or self.gamma < 0:
            raise DomainError(f"gamma must be nonnegative, got {self.gamma}", module="selfpaced")
        losses.setflags(write=False)
        object.__setattr__(self, "losses", losses)

    @property
    def n(self) -> int:
        return int(self.losses.size)


@dataclass(frozen=True, eq=False)
class RowSolution:
    """Optimal weights of one row.

    ``theta1`` counts the sorted positions fixed at 1 and ``theta2`` is the first
    (1-based) sorted position fixed at 0, so positions theta1+1 .. theta2-1 carry the
    intermediate weights.
    """

    weights: np.ndarray
    theta1: int
    theta2: int
    objective_value: float

    @property
    def nonzero_fraction(self) -> float:
        return float(np.count_nonzero(self.weights)) / max(self.weights.size, 1)
