"""Feature-matrix assembly for the meta-level study.

Rows are problems, columns follow the fixed feature catalog order, and each
row carries its class label (HPO or BBOB) and search-space dimension.
Problems with missing or non-finite features never enter the matrix; they
are returned separately with the reason for exclusion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..ela import FEATURE_NAMES

CLASS_LABELS = ("BBOB", "HPO")


@dataclass(frozen=True)
class FeatureMatrix:
    problem_ids: tuple
    feature_names: tuple
    values: np.ndarray
    classes: tuple
    dims: tuple

    def __post_init__(self):
        n, p = self.values.shape
        if len(self.problem_ids) != n or len(self.classes) != n or len(self.dims) != n:
            raise ValueError("row metadata must align with the value matrix")
        if len(self.feature_names) != p:
            raise ValueError("feature_names must align with matrix columns")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("feature matrix must be finite")
        bad = set(self.classes) - set(CLASS_LABELS)
        if bad:
            raise ValueError(f"unknown class labels: {sorted(bad)}")

    def __len__(self):
        return len(self.problem_ids)


def build_feature_matrix(entries, feature_names=FEATURE_NAMES):
    """Assemble a FeatureMatrix from per-problem feature dicts.

    `entries` yields (problem_id, features, class_label, dim) tuples. Rows
    with missing or non-finite feature values are excluded; the second
    return value maps each excluded problem to the reason.
    """
    ids, rows, classes, dims = [], [], [], []
    excluded = {}
    for problem_id, features, class_label, dim in entries:
        row = []
        reason = None
        for name in feature_names:
            if name not in features:
                reason = f"missing feature {name}"
                break
            v = float(features[name])
            if not math.isfinite(v):
                reason = f"non-finite feature {name}"
                break
            row.append(v)
        if reason is not None:
            excluded[problem_id] = reason
            continue
        ids.append(problem_id)
        rows.append(row)
        classes.append(class_label)
        dims.append(int(dim))
    values = np.array(rows, dtype=float) if rows else np.empty((0, len(feature_names)))
    matrix = FeatureMatrix(
        problem_ids=tuple(ids),
        feature_names=tuple(feature_names),
        values=values,
        classes=tuple(classes),
        dims=tuple(dims),
    )
    return matrix, excluded


def drop_zero_variance(matrix: FeatureMatrix):
    """Remove constant columns; they carry no information and break scaling.

    Returns the reduced matrix and the dropped column names.
    """
    keep = [j for j in range(matrix.values.shape[1]) if np.ptp(matrix.values[:, j]) > 0.0]
    dropped = tuple(
        name for j, name in enumerate(matrix.feature_names) if j not in set(keep)
    )
    reduced = FeatureMatrix(
        problem_ids=matrix.problem_ids,
        feature_names=tuple(matrix.feature_names[j] for j in keep),
        values=matrix.values[:, keep],
        classes=matrix.classes,
        dims=matrix.dims,
    )
    return reduced, dropped


def select_rows(matrix: FeatureMatrix, indices) -> FeatureMatrix:
    idx = list(indices)
    return FeatureMatrix(
        problem_ids=tuple(matrix.problem_ids[i] for i in idx),
        feature_names=matrix.feature_names,
        values=matrix.values[idx],
        classes=tuple(matrix.classes[i] for i in idx),
        dims=tuple(matrix.dims[i] for i in idx),
    )
