"""Linear/quadratic surrogate-model features.

Four least-squares fits against the standardized responses: linear, linear
with pairwise interactions, pure quadratic (linear plus per-coordinate
squares), and full quadratic with interactions. Features are the adjusted R^2
of each, the intercept and absolute-coefficient extrema of the linear fit,
and the conditioning ratio max|q|/min|q| of the squared-term coefficients.
"""
from __future__ import annotations

import numpy as np

from ..design import DegenerateSampleError


def _interaction_columns(X: np.ndarray) -> np.ndarray:
    n, d = X.shape
    cols = [X[:, i] * X[:, j] for i in range(d) for j in range(i + 1, d)]
    if not cols:
        return np.empty((n, 0))
    return np.stack(cols, axis=1)


def _adjusted_r2(y: np.ndarray, residual_ss: float, n_predictors: int) -> float:
    n = y.size
    if n - n_predictors - 1 <= 0:
        raise DegenerateSampleError(
            f"need more than {n_predictors + 1} points for a {n_predictors}-predictor fit"
        )
    total_ss = float(((y - y.mean()) ** 2).sum())
    if total_ss == 0.0:
        raise DegenerateSampleError("responses are constant")
    r2 = 1.0 - residual_ss / total_ss
    return 1.0 - (1.0 - r2) * (n - 1) / (n - n_predictors - 1)


def _fit(design: np.ndarray, y: np.ndarray):
    A = np.column_stack([np.ones(len(y)), design])
    coef, _, _, _ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    return coef, float((resid * resid).sum())


def features_meta(X: np.ndarray, z: np.ndarray) -> dict:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    z = np.asarray(z, dtype=float).ravel()
    n, d = X.shape
    if n != z.size:
        raise ValueError("X and z length mismatch")

    inter = _interaction_columns(X)
    squares = X * X

    lin_coef, lin_rss = _fit(X, z)
    lin_adj = _adjusted_r2(z, lin_rss, d)
    abs_b = np.abs(lin_coef[1:])

    _, li_rss = _fit(np.column_stack([X, inter]), z)
    li_adj = _adjusted_r2(z, li_rss, d + inter.shape[1])

    quad_coef, q_rss = _fit(np.column_stack([X, squares]), z)
    q_adj = _adjusted_r2(z, q_rss, 2 * d)
    abs_q = np.abs(quad_coef[1 + d :])

    _, qi_rss = _fit(np.column_stack([X, squares, inter]), z)
    qi_adj = _adjusted_r2(z, qi_rss, 2 * d + inter.shape[1])

    return {
        "ela_meta.lin_simple.adj_r2": lin_adj,
        "ela_meta.lin_simple.intercept": float(lin_coef[0]),
        "ela_meta.lin_simple.coef.min": float(abs_b.min()),
        "ela_meta.lin_simple.coef.max": float(abs_b.max()),
        "ela_meta.lin_simple.coef.max_by_min": float(abs_b.max() / abs_b.min()),
        "ela_meta.lin_w_interact.adj_r2": li_adj,
        "ela_meta.quad_simple.adj_r2": q_adj,
        "ela_meta.quad_simple.cond": float(abs_q.max() / abs_q.min()),
        "ela_meta.quad_w_interact.adj_r2": qi_adj,
    }
