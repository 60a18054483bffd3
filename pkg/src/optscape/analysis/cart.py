"""Greedy Gini-impurity decision trees for problem-class recovery."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Leaf:
    label: object
    count: int


@dataclass(frozen=True)
class Split:
    feature: int
    threshold: float
    left: object
    right: object


@dataclass(frozen=True)
class TreeModel:
    root: object
    max_depth: int | None
    min_leaf: int
    n_features: int


def _gini(counts, n):
    p = counts / n
    return 1.0 - float(np.sum(p * p))


def _best_split(values, y_codes, n_classes, min_leaf):
    """(feature, threshold, impurity decrease) or None.

    Thresholds are midpoints between adjacent distinct sorted values; ties in
    decrease keep the lower feature index, then the lower threshold.
    """
    n, p = values.shape
    total = np.bincount(y_codes, minlength=n_classes).astype(float)
    parent = _gini(total, n)
    best = None
    for f in range(p):
        order = np.argsort(values[:, f], kind="stable")
        col = values[order, f]
        onehot = np.zeros((n, n_classes))
        onehot[np.arange(n), y_codes[order]] = 1.0
        left_counts = np.cumsum(onehot, axis=0)  # after position i: i+1 rows left
        sizes = np.arange(1, n)  # candidate split after sorted position i-1
        valid = (col[:-1] < col[1:]) & (sizes >= min_leaf) & (n - sizes >= min_leaf)
        if not valid.any():
            continue
        lc = left_counts[:-1]
        rc = total[None, :] - lc
        nl = sizes.astype(float)
        nr = n - nl
        gl = 1.0 - np.sum((lc / nl[:, None]) ** 2, axis=1)
        gr = 1.0 - np.sum((rc / nr[:, None]) ** 2, axis=1)
        decrease = parent - (nl * gl + nr * gr) / n
        # weighted child impurity never exceeds the parent's, so zero-gain
        # splits are legal; rejecting them would leave XOR-like nodes unsplit
        decrease[~valid] = -np.inf
        i = int(np.argmax(decrease))  # first max = lowest threshold
        if best is None or decrease[i] > best[2]:
            best = (f, (col[i] + col[i + 1]) / 2.0, float(decrease[i]))
    return best


def _majority(labels):
    counts = Counter(labels)
    top = max(counts.values())
    return min(lab for lab, c in counts.items() if c == top)


def cart_train(features, labels, max_depth=4, min_leaf=5) -> TreeModel:
    """Greedy binary CART; shallow defaults keep the trees readable."""
    values = np.asarray(features, dtype=float)
    labels = list(labels)
    if not labels:
        raise ValueError("cannot train on zero rows")
    if values.ndim != 2 or values.shape[0] != len(labels):
        raise ValueError("features and labels must align")
    if min_leaf < 1:
        raise ValueError("min_leaf must be at least 1")
    classes = sorted(set(labels))
    code = {lab: i for i, lab in enumerate(classes)}
    y_codes = np.array([code[lab] for lab in labels])

    def build(idx, depth):
        sub = [labels[i] for i in idx]
        if len(set(sub)) == 1:
            return Leaf(sub[0], len(idx))
        if max_depth is not None and depth >= max_depth:
            return Leaf(_majority(sub), len(idx))
        if len(idx) < 2 * min_leaf:
            return Leaf(_majority(sub), len(idx))
        found = _best_split(values[idx], y_codes[idx], len(classes), min_leaf)
        if found is None:
            return Leaf(_majority(sub), len(idx))
        f, thr, _ = found
        mask = values[idx, f] <= thr
        return Split(
            feature=f,
            threshold=thr,
            left=build(idx[mask], depth + 1),
            right=build(idx[~mask], depth + 1),
        )

    root = build(np.arange(len(labels)), 0)
    return TreeModel(root=root, max_depth=max_depth, min_leaf=min_leaf,
                     n_features=values.shape[1])


def cart_predict(model: TreeModel, row) -> object:
    node = model.root
    row = np.asarray(row, dtype=float)
    while isinstance(node, Split):
        node = node.left if row[node.feature] <= node.threshold else node.right
    return node.label


def cart_predict_many(model: TreeModel, rows) -> list:
    return [cart_predict(model, r) for r in np.asarray(rows, dtype=float)]


def tree_depth(model: TreeModel) -> int:
    def depth(node):
        if isinstance(node, Leaf):
            return 0
        return 1 + max(depth(node.left), depth(node.right))

    return depth(model.root)


def tree_to_dict(model: TreeModel, feature_names=None) -> dict:
    """Nested JSON-ready structure for export."""

    def walk(node):
        if isinstance(node, Leaf):
            return {"type": "leaf", "label": node.label, "count": node.count}
        name = feature_names[node.feature] if feature_names else node.feature
        return {
            "type": "split",
            "feature": name,
            "threshold": node.threshold,
            "left": walk(node.left),
            "right": walk(node.right),
        }

    return walk(model.root)
