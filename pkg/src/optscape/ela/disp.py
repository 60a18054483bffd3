"""Dispersion features.

Compares the spread of the best-responding subsample against the spread of
the full sample, at four quantile levels q: the subset holds the ceil(q*n)
points with the smallest responses (stable order on ties). Spread is the mean
or the median of all pairwise distances; a singleton subset has spread 0.
"""
from __future__ import annotations

import numpy as np

from ..design import DegenerateSampleError

QUANTILES = (0.02, 0.05, 0.10, 0.25)


def _pairwise(X: np.ndarray) -> np.ndarray:
    n = len(X)
    if n < 2:
        return np.zeros(1)
    diff = X[:, None, :] - X[None, :, :]
    D = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    iu = np.triu_indices(n, k=1)
    return D[iu]


def features_disp(X: np.ndarray, z: np.ndarray, quantiles=QUANTILES) -> dict:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    z = np.asarray(z, dtype=float).ravel()
    n = len(X)
    if n < 2:
        raise DegenerateSampleError("need at least two points")
    order = np.argsort(z, kind="stable")
    full = _pairwise(X)
    full_mean = float(full.mean())
    full_median = float(np.median(full))
    if full_mean == 0.0:
        raise DegenerateSampleError("all points coincide")

    out = {}
    for q in quantiles:
        k = int(np.ceil(q * n))
        sub = _pairwise(X[order[:k]])
        sub_mean = float(sub.mean())
        sub_median = float(np.median(sub))
        tag = f"{int(round(q * 100)):02d}"
        out[f"disp.ratio_mean_{tag}"] = sub_mean / full_mean
        out[f"disp.ratio_median_{tag}"] = sub_median / full_median
        out[f"disp.diff_mean_{tag}"] = sub_mean - full_mean
        out[f"disp.diff_median_{tag}"] = sub_median - full_median
    return out
