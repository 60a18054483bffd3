"""Repeated stratified cross-validation for classifier error estimates."""
from __future__ import annotations

import numpy as np

from .cart import cart_predict_many, cart_train


class StratificationError(ValueError):
    """The folds are unusable: fewer than 2, or a class smaller than folds."""


def stratified_folds(labels, folds, rng):
    """Partition indices into folds preserving class proportions within 1.

    Each class is shuffled and dealt round-robin, so every fold holds either
    floor or ceil of class_count / folds members of each class.
    """
    if folds < 2:
        raise StratificationError(f"need at least 2 folds, got {folds}")
    labels = np.asarray(labels)
    out = [[] for _ in range(folds)]
    for lab in sorted(set(labels.tolist())):
        idx = np.flatnonzero(labels == lab)
        if idx.size < folds:
            raise StratificationError(f"class {lab!r} has {idx.size} < {folds} members")
        idx = rng.permutation(idx)
        for f in range(folds):
            out[f].extend(idx[f::folds].tolist())
    return [np.sort(np.array(f, dtype=int)) for f in out]


def repeated_stratified_cv(features, labels, trainer, folds=10, repeats=10, seed=0):
    """Pooled misclassification rate over repeats x folds held-out predictions.

    `trainer(train_X, train_y)` must return a callable mapping a test matrix
    to predicted labels.
    """
    values = np.asarray(features, dtype=float)
    labels = list(labels)
    n = len(labels)
    if values.shape[0] != n:
        raise ValueError("features and labels must align")
    wrong = 0
    children = np.random.SeedSequence(seed).spawn(repeats)
    for child in children:
        rng = np.random.default_rng(child)
        for held in stratified_folds(labels, folds, rng):
            mask = np.zeros(n, dtype=bool)
            mask[held] = True
            predict = trainer(values[~mask], [labels[i] for i in np.flatnonzero(~mask)])
            preds = predict(values[mask])
            truth = [labels[i] for i in held]
            wrong += sum(p != t for p, t in zip(preds, truth))
    return wrong / (repeats * n)


def cart_trainer(max_depth=4, min_leaf=5):
    """Trainer adapter plugging the decision tree into cross-validation."""

    def train(X, y):
        model = cart_train(X, y, max_depth=max_depth, min_leaf=min_leaf)
        return lambda rows: cart_predict_many(model, rows)

    return train
