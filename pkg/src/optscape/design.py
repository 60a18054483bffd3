"""Space-filling designs and scaling helpers.

The sampling pipeline used throughout the package: draw a Latin hypercube in
the unit cube, map it to the problem box, evaluate, then z-score the responses
before any landscape feature is computed.
"""
from __future__ import annotations

import numpy as np

from .domains import BoxDomain, DomainError


class DegenerateSampleError(ValueError):
    """The sample cannot support the requested statistic (e.g. constant y)."""


def lhs_minmax(
    n: int, dim: int, rng: np.random.Generator, restarts: int = 100
) -> np.ndarray:
    """Latin hypercube sample in [0, 1]^dim, best of `restarts` by maximin.

    Each of the `restarts` candidates places exactly one point per axis
    stratum (uniform position within the stratum); the candidate with the
    largest minimum pairwise distance wins, first seen on ties.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")

    best = None
    best_score = -np.inf
    for _ in range(restarts):
        cand = np.empty((n, dim))
        for j in range(dim):
            perm = rng.permutation(n)
            cand[:, j] = (perm + rng.uniform(size=n)) / n
        if n == 1:
            score = np.inf
        else:
            diff = cand[:, None, :] - cand[None, :, :]
            d2 = np.einsum("ijk,ijk->ij", diff, diff)
            np.fill_diagonal(d2, np.inf)
            score = float(np.sqrt(d2.min()))
        if score > best_score:
            best_score = score
            best = cand
    return best


def normalize(domain: BoxDomain, X: np.ndarray) -> np.ndarray:
    """Affine map from the domain box onto [0, 1]^dim. Rejects outside points."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != domain.dim:
        raise DomainError(f"expected {domain.dim} columns, got {X.shape[1]}")
    if (X < domain.lower - 1e-12).any() or (X > domain.upper + 1e-12).any():
        raise DomainError("point outside domain")
    return (X - domain.lower) / domain.width


def denormalize(domain: BoxDomain, U: np.ndarray) -> np.ndarray:
    """Affine map from [0, 1]^dim back to the domain box."""
    U = np.atleast_2d(np.asarray(U, dtype=float))
    if U.shape[1] != domain.dim:
        raise DomainError(f"expected {domain.dim} columns, got {U.shape[1]}")
    if (U < -1e-12).any() or (U > 1 + 1e-12).any():
        raise DomainError("point outside the unit cube")
    return domain.lower + U * domain.width


def standardize_y(y: np.ndarray) -> np.ndarray:
    """z-score with the sample (n-1) standard deviation.

    Raises DegenerateSampleError when the responses carry no variation, so a
    constant landscape never reaches the feature code as silent NaNs.
    """
    y = np.asarray(y, dtype=float).ravel()
    if y.size < 2:
        raise DegenerateSampleError("need at least two observations")
    if not np.isfinite(y).all():
        raise DegenerateSampleError("responses must be finite")
    sd = y.std(ddof=1)
    if sd == 0.0:
        raise DegenerateSampleError("responses are constant")
    return (y - y.mean()) / sd
