"""Multiclass log loss with defensive validation."""
from __future__ import annotations

import numpy as np

PROB_EPS = 1e-15
ROW_SUM_TOL = 1e-6


class InvalidProbabilitiesError(ValueError):
    """Predicted class probabilities fail basic sanity checks."""


def validate_probabilities(P: np.ndarray) -> np.ndarray:
    P = np.atleast_2d(np.asarray(P, dtype=float))
    if P.ndim != 2 or P.shape[1] < 2:
        raise InvalidProbabilitiesError("need an (n, classes>=2) matrix")
    if not np.isfinite(P).all():
        raise InvalidProbabilitiesError("probabilities must be finite")
    if (P < -ROW_SUM_TOL).any():
        raise InvalidProbabilitiesError("probabilities must be nonnegative")
    rows = P.sum(axis=1)
    if np.abs(rows - 1.0).max() > ROW_SUM_TOL:
        raise InvalidProbabilitiesError(
            f"row sums deviate from 1 by up to {np.abs(rows - 1.0).max():.3g}"
        )
    return P


def logloss(P: np.ndarray, labels: np.ndarray) -> float:
    """Mean negative log probability of the true class.

    The true-class probability is clamped to [1e-15, 1 - 1e-15] before the
    log, so a perfect prediction scores -log(1 - 1e-15) rather than 0.
    """
    P = validate_probabilities(P)
    labels = np.asarray(labels)
    if labels.ndim != 1 or labels.size != len(P):
        raise InvalidProbabilitiesError("labels must be one per row")
    if labels.min() < 0 or labels.max() >= P.shape[1]:
        raise InvalidProbabilitiesError("label outside the class range")
    p_true = P[np.arange(len(P)), labels.astype(int)]
    p_true = np.clip(p_true, PROB_EPS, 1.0 - PROB_EPS)
    return float(-np.log(p_true).mean())
