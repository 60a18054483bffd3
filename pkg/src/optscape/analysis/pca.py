"""Principal components of the scaled and centered feature matrix."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix import FeatureMatrix


@dataclass(frozen=True)
class PcaModel:
    feature_names: tuple
    means: np.ndarray
    scales: np.ndarray
    loadings: np.ndarray  # features x components
    explained_variance_ratio: np.ndarray


def pca_fit(matrix: FeatureMatrix, n_components: int):
    """SVD of the column-standardized matrix.

    Returns (model, scores). Component signs are fixed by forcing each
    component's largest-magnitude loading positive, so exports are stable.
    """
    values = matrix.values
    n, p = values.shape
    if not 1 <= n_components <= min(n - 1, p):
        raise ValueError(f"n_components must be in 1..{min(n - 1, p)}")
    means = values.mean(axis=0)
    scales = values.std(axis=0, ddof=1)
    if np.any(scales == 0.0):
        j = int(np.argmax(scales == 0.0))
        raise ValueError(f"zero-variance column {matrix.feature_names[j]}")
    scaled = (values - means) / scales

    u, s, vt = np.linalg.svd(scaled, full_matrices=False)
    ratio_all = s**2 / np.sum(s**2)
    loadings = vt[:n_components].T.copy()
    scores = (u[:, :n_components] * s[:n_components]).copy()
    for j in range(n_components):
        peak = int(np.argmax(np.abs(loadings[:, j])))
        if loadings[peak, j] < 0.0:
            loadings[:, j] = -loadings[:, j]
            scores[:, j] = -scores[:, j]

    model = PcaModel(
        feature_names=matrix.feature_names,
        means=means,
        scales=scales,
        loadings=loadings,
        explained_variance_ratio=ratio_all[:n_components].copy(),
    )
    return model, scores


def pca_transform(model: PcaModel, values: np.ndarray) -> np.ndarray:
    """Project raw feature rows with a fitted model's centering and scaling."""
    values = np.atleast_2d(np.asarray(values, dtype=float))
    if values.shape[1] != len(model.feature_names):
        raise ValueError("row width must match the fitted feature set")
    return (values - model.means) / model.scales @ model.loadings
