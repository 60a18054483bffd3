"""Information-content features.

The sample is ordered by a nearest-neighbour tour (start at a fixed index,
distance ties to the lowest candidate index). Slopes between consecutive tour
points are symbolized at a sensitivity eps into {-1, 0, 1}; the entropy of
consecutive unequal symbol pairs, base 6, traces an information curve H(eps)
over a fixed grid {0} union 1000 log-spaced values in [1e-5, 1e15].

Features: the curve maximum, the smallest positive eps settling below 0.05,
the positive eps maximizing H, their log10 ratio, and the fraction of
non-repeating nonzero symbols at eps = 0.
"""
from __future__ import annotations

import numpy as np

from ..design import DegenerateSampleError

SETTLING_THRESHOLD = 0.05


def default_epsilons() -> np.ndarray:
    return np.concatenate(([0.0], np.logspace(-5.0, 15.0, 1000)))


def nearest_neighbour_tour(X: np.ndarray, start_index: int = 0) -> np.ndarray:
    """Visit order: repeatedly hop to the nearest unvisited point."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    n = len(X)
    if not 0 <= start_index < n:
        raise ValueError("start_index out of range")
    diff = X[:, None, :] - X[None, :, :]
    D = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    visited = np.zeros(n, dtype=bool)
    order = np.empty(n, dtype=int)
    current = start_index
    for step in range(n):
        order[step] = current
        visited[current] = True
        if step == n - 1:
            break
        dists = np.where(visited, np.inf, D[current])
        current = int(np.argmin(dists))  # argmin takes the lowest index on ties
    return order


def _pair_entropy(symbols: np.ndarray) -> np.ndarray:
    """H per epsilon row: entropy (base 6) of consecutive unequal pairs."""
    a = symbols[:, :-1]
    b = symbols[:, 1:]
    m = a.shape[1]
    H = np.zeros(len(symbols))
    for av in (-1, 0, 1):
        for bv in (-1, 0, 1):
            if av == bv:
                continue
            p = ((a == av) & (b == bv)).sum(axis=1) / m
            mask = p > 0
            H[mask] -= p[mask] * (np.log(p[mask]) / np.log(6.0))
    return H


def features_ic(
    X: np.ndarray,
    z: np.ndarray,
    start_index: int = 0,
    epsilons: np.ndarray | None = None,
) -> dict:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    z = np.asarray(z, dtype=float).ravel()
    n = len(X)
    if n < 3:
        raise DegenerateSampleError("need at least three points")
    if epsilons is None:
        epsilons = default_epsilons()

    order = nearest_neighbour_tour(X, start_index)
    Xs = X[order]
    zs = z[order]
    steps = np.sqrt(((Xs[1:] - Xs[:-1]) ** 2).sum(axis=1))
    if (steps == 0.0).any():
        raise DegenerateSampleError("duplicate consecutive tour points")
    slopes = (zs[1:] - zs[:-1]) / steps

    eps_col = epsilons[:, None]
    symbols = (slopes[None, :] > eps_col).astype(np.int8) - (
        slopes[None, :] < -eps_col
    ).astype(np.int8)
    H = _pair_entropy(symbols)

    h_max = float(H.max())

    positive = epsilons > 0
    H_pos = H[positive]
    eps_pos = epsilons[positive]
    settled = np.nonzero(H_pos < SETTLING_THRESHOLD)[0]
    if settled.size == 0:
        raise DegenerateSampleError("information curve never settles on the grid")
    eps_s = float(eps_pos[settled[0]])
    eps_max = float(eps_pos[int(np.argmax(H_pos))])

    sym0 = symbols[0] if epsilons[0] == 0.0 else np.sign(slopes).astype(np.int8)
    nonzero = sym0[sym0 != 0]
    if nonzero.size == 0:
        m0 = 0.0
    else:
        changes = 1 + int((nonzero[1:] != nonzero[:-1]).sum())
        m0 = changes / len(slopes)

    return {
        "ic.h.max": h_max,
        "ic.eps.s": eps_s,
        "ic.eps.max": eps_max,
        "ic.eps.ratio": float(np.log10(eps_s / eps_max)),
        "ic.m0": m0,
    }
