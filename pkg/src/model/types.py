"""Type definitions for the GLOCAL host model and its self-paced weights."""

from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from src.core.errors import ConfigError, InvariantViolationError

UNIT_ROW_TOL = 1e-10
DEFAULT_LATENT_CAP = 20


@dataclass(frozen=True)
class HyperParams:
    """Regularization weights and latent sizes of the unified objective."""

    k: int
    m: int
    g: int = 1
    alpha: float = 1.0
    beta1: float = 0.5
    beta2: float = 0.5
    tau: float = 1e-3

    def __post_init__(self):
        for name in ("k", "m", "g"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise ConfigError(
                    f"{name} must be a positive integer, got {value!r}", module="model"
                )
        for name in ("alpha", "beta1", "beta2", "tau"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ConfigError(
                    f"{name} must be a nonnegative real, got {value!r}", module="model"
                )

    @classmethod
    def with_defaults(cls, n_labels: int, **kwargs: Any) -> "HyperParams":
        """Fill unset k and m with min(l, 20)."""
        for name in ("k", "m"):
            if kwargs.get(name) is None:
                kwargs[name] = min(n_labels, DEFAULT_LATENT_CAP)
        return cls(**kwargs)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "HyperParams":
        return cls(**{k: v for k, v in data.items() if k in cls.__dataclass_fields__})


@dataclass(eq=False)
class ModelState:
    """Learned factors: U (l×k), V (k×n), W (d×k) and one Z_b (l×m) per group."""

    U: np.ndarray
    V: np.ndarray
    W: np.ndarray
    Z: list[np.ndarray] = field(default_factory=list)

    @property
    def dims(self) -> dict[str, int]:
        l, k = self.U.shape
        return {
            "d": int(self.W.shape[0]),
            "n": int(self.V.shape[1]),
            "l": int(l),
            "k": int(k),
            "m": int(self.Z[0].shape[1]) if self.Z else 0,
            "g": len(self.Z),
        }

    def copy(self) -> "ModelState":
        return ModelState(
            U=self.U.copy(), V=self.V.copy(), W=self.W.copy(), Z=[z.copy() for z in self.Z]
        )

    def max_row_norm_error(self) -> float:
        """Largest deviation of a Z row norm from 1."""
        if not self.Z:
            return 0.0
        return max(float(np.max(np.abs(np.linalg.norm(z, axis=1) - 1.0))) for z in self.Z)

    def check_unit_rows(self, tol: float = UNIT_ROW_TOL) -> None:
        """Raise if a Laplacian factor row is off the unit sphere."""
        error = self.max_row_norm_error()
        if error > tol:
            raise InvariantViolationError(
                f"Laplacian factor rows deviate from unit norm by {error:.3e}", module="model"
            )

    def equals(self, other: "ModelState") -> bool:
        return (
            np.array_equal(self.U, other.U)
            and np.array_equal(self.V, other.V)
            and np.array_equal(self.W, other.W)
            and len(self.Z) == len(other.Z)
            and all(np.array_equal(a, b) for a, b in zip(self.Z, other.Z))
        )


@dataclass(eq=False)
class PaceState:
    """Self-paced weights P (k×n) with the pace parameters and their annealing ratios.

    A ``fixed`` pace keeps P constant and is never re-solved or annealed; the GLOCAL host
    runs with the ``frozen()`` all-ones pace and λ = γ = 0.
    """

    P: np.ndarray
    lam: float
    gamma: float
    mu1: float = 1.0
    mu2: float = 1.0
    fixed: bool = False

    def __post_init__(self):
        self.P = np.asarray(self.P, dtype=float)
        if np.any(self.P < 0) or np.any(self.P > 1) or not np.all(np.isfinite(self.P)):
            raise ConfigError("pace weights must lie in [0, 1]", module="model")
        if not self.fixed and not self.lam > 0:
            raise ConfigError(f"lambda must be positive, got {self.lam}", module="model")
        if self.gamma < 0 or self.lam < 0:
            raise ConfigError("lambda and gamma must be nonnegative", module="model")
        if self.mu1 < 1:
            raise ConfigError(f"mu1 must be >= 1, got {self.mu1}", module="model")
        if not 0 < self.mu2 <= 1:
            raise ConfigError(f"mu2 must lie in (0, 1], got {self.mu2}", module="model")

    @classmethod
    def initial(
        cls, k: int, n: int, lam: float, gamma: float, mu1: float = 1.0, mu2: float = 1.0
    ) -> "PaceState":
        """Self-paced start with P all ones (re-solved before the first sweep by ``fit``)."""
        return cls(P=np.ones((k, n)), lam=lam, gamma=gamma, mu1=mu1, mu2=mu2)

    @classmethod
    def frozen(cls, k: int, n: int) -> "PaceState":
        """The GLOCAL host pace: P ≡ 1, no pace regularizer, no annealing."""
        return cls(P=np.ones((k, n)), lam=0.0, gamma=0.0, mu1=1.0, mu2=1.0, fixed=True)

    def copy(self) -> "PaceState":
        return PaceState(
            P=self.P.copy(),
            lam=self.lam,
            gamma=self.gamma,
            mu1=self.mu1,
            mu2=self.mu2,
            fixed=self.fixed,
        )

    @property
    def mean_weight(self) -> float:
        return float(self.P.mean())


@dataclass(frozen=True)
class ObjectiveBreakdown:
    """Per-term values of the unified objective."""

    recon: float
    residual: float
    global_corr: float
    local_corr: float
    pace_l1: float
    pace_l2: float
    reg: float

    @property
    def total(self) -> float:
        return (
            self.recon
            + self.residual
            + self.global_corr
            + self.local_corr
            + self.pace_l1
            + self.pace_l2
            + self.reg
        )

    @property
    def smooth(self) -> float:
        """All terms except the pace regularizer (which is constant while P is fixed)."""
        return self.recon + self.residual + self.global_corr + self.local_corr + self.reg

    def to_dict(self) -> dict[str, float]:
        return {**asdict(self), "total": self.total}
