"""Nearest-better clustering features.

For every sample point: the distance to its nearest neighbour and the
distance to its nearest strictly better point (smaller response). A point
with no better point (a sample-best) takes the maximum distance from itself
to any other point as its nearest-better distance and casts no edge.
"""
from __future__ import annotations

import numpy as np

from ..design import DegenerateSampleError


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    a = a - a.mean()
    b = b - b.mean()
    denom = np.sqrt((a * a).sum() * (b * b).sum())
    if denom == 0.0:
        raise DegenerateSampleError("correlation undefined for constant input")
    return float((a * b).sum() / denom)


def nearest_better_distances(X: np.ndarray, z: np.ndarray):
    """Per point: nearest-neighbour distance, nearest-better distance, and
    the index of the nearest better point (-1 for sample-best points)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    z = np.asarray(z, dtype=float).ravel()
    n = len(X)
    if n < 3:
        raise DegenerateSampleError("need at least three points")
    diff = X[:, None, :] - X[None, :, :]
    D = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    off = D + np.diag(np.full(n, np.inf))
    d_nn = off.min(axis=1)

    d_nb = np.empty(n)
    nb_index = np.full(n, -1, dtype=int)
    for i in range(n):
        better = z < z[i]
        if better.any():
            dists = np.where(better, D[i], np.inf)
            j = int(np.argmin(dists))
            nb_index[i] = j
            d_nb[i] = dists[j]
        else:
            d_nb[i] = D[i].max()
    return d_nn, d_nb, nb_index


def features_nbc(X: np.ndarray, z: np.ndarray) -> dict:
    z = np.asarray(z, dtype=float).ravel()
    d_nn, d_nb, nb_index = nearest_better_distances(X, z)
    n = z.size
    ratios = d_nn / d_nb
    indegree = np.bincount(nb_index[nb_index >= 0], minlength=n).astype(float)
    return {
        "nbc.nn_nb.sd_ratio": float(d_nn.std(ddof=1) / d_nb.std(ddof=1)),
        "nbc.nn_nb.mean_ratio": float(d_nn.mean() / d_nb.mean()),
        "nbc.nn_nb.cor": _pearson(d_nn, d_nb),
        "nbc.dist_ratio.coeff_var": float(ratios.std(ddof=1) / ratios.mean()),
        "nbc.nb_fitness.cor": _pearson(indegree, z),
    }
