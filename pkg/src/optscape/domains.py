"""Box-constrained problem domains and the common problem interface.

Every benchmark problem in this package is a scalar minimization task over an
axis-aligned box. Optimizers and samplers work in the unit cube [0, 1]^dim and
map to the native box through :func:`optscape.design.denormalize`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class DomainError(ValueError):
    """A point lies outside the domain it is being used with."""


@dataclass(frozen=True)
class BoxDomain:
    """Axis-aligned box, lower[i] < upper[i] for every coordinate."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise ValueError("lower and upper must be 1-D arrays of equal length")
        if lower.size == 0:
            raise ValueError("domain must have at least one coordinate")
        if not (np.isfinite(lower).all() and np.isfinite(upper).all()):
            raise ValueError("domain bounds must be finite")
        if not (lower < upper).all():
            raise ValueError("each lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x: np.ndarray, atol: float = 0.0) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(
            (x >= self.lower - atol).all() and (x <= self.upper + atol).all()
        )

    @staticmethod
    def cube(dim: int, lower: float = -5.0, upper: float = 5.0) -> "BoxDomain":
        return BoxDomain(np.full(dim, float(lower)), np.full(dim, float(upper)))


@dataclass
class Problem:
    """A scalar minimization problem over a box.

    Subclasses implement :meth:`evaluate`; :meth:`evaluate_many` falls back to
    a row loop but may be overridden with a vectorized path.
    """

    problem_id: str
    domain: BoxDomain
    problem_class: str = "unknown"  # problem family tag used by the feature table
    metadata: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.domain.dim

    def evaluate(self, x: np.ndarray) -> float:
        raise NotImplementedError

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.dim:
            raise DomainError(f"expected an (n, {self.dim}) array, got {X.shape}")
        return np.array([self.evaluate(row) for row in X], dtype=float)

    def __post_init__(self):
        if not self.problem_id:
            raise ValueError("problem_id must be non-empty")
