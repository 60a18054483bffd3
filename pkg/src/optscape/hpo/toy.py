"""Fast, fully deterministic hyperparameter tuning problems.

The model under tuning is an L2/L1-regularized multinomial logistic
regression trained by full-batch gradient descent with a fixed step size and
zero-initialized weights. Zero initialization makes the untrained model
predict uniform probabilities, so the zero-iteration corner of every space
scores exactly ln(number of classes).

The objective is pooled 10-fold cross-validated log loss. Fold assignment is
frozen per dataset from a named seed, so repeated evaluations of the same
configuration are bitwise identical.
"""
from __future__ import annotations

import csv
import hashlib
import importlib.resources
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..domains import DomainError, Problem
from .losses import PROB_EPS
from .space import ParamSpec, SearchSpace

DATASETS = ("linsep2", "blobs3", "rings6")
TOY_DIMS = (2, 3, 5)
N_FOLDS = 10

# defaults for knobs a lower-dimensional space leaves inactive
DEFAULT_L2 = 1e-3
DEFAULT_L1 = 0.0
DEFAULT_SMOOTH = 0.0


@dataclass(frozen=True)
class Dataset:
    name: str
    X: np.ndarray  # z-scored feature matrix
    y: np.ndarray  # integer labels 0..g-1
    n_classes: int


@lru_cache(maxsize=None)
def load_dataset(name: str) -> Dataset:
    if name not in DATASETS:
        raise ValueError(f"unknown dataset {name!r}; bundled: {DATASETS}")
    ref = importlib.resources.files("optscape.hpo") / "data" / f"{name}.csv"
    with ref.open("r") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    arr = np.array(rows)
    X = arr[:, :-1]
    y = arr[:, -1].astype(int)
    mu = X.mean(axis=0)
    sd = X.std(axis=0)
    sd[sd == 0] = 1.0
    X = (X - mu) / sd
    assert header[-1] == "label"
    return Dataset(name=name, X=X, y=y, n_classes=int(y.max()) + 1)


def _named_seed(tag: str) -> int:
    digest = hashlib.sha256(tag.encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def fold_assignment(n: int, dataset_name: str, folds: int = N_FOLDS) -> np.ndarray:
    rng = np.random.default_rng(_named_seed(f"cvfolds:{dataset_name}"))
    perm = rng.permutation(n)
    fold = np.empty(n, dtype=int)
    fold[perm] = np.arange(n) % folds
    return fold


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


DIVERGENCE_LIMIT = 1e12


def train_logistic(
    X: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    iters: int,
    lr: float,
    l2: float,
    l1: float = 0.0,
    smooth: float = 0.0,
) -> np.ndarray | None:
    """Weights (features+1, classes) after `iters` full-batch steps.

    Regularization applies to non-bias rows only. Returns all-zero weights
    for iters == 0, and None when the iteration blows past DIVERGENCE_LIMIT
    (aggressive step sizes against huge penalties), so callers can score the
    configuration as a deterministic worst case instead of propagating NaNs.
    """
    n, k = X.shape
    Xb = np.column_stack([X, np.ones(n)])
    Y = np.zeros((n, n_classes))
    Y[np.arange(n), y] = 1.0
    if smooth > 0:
        Y = Y * (1.0 - smooth) + smooth / n_classes
    W = np.zeros((k + 1, n_classes))
    mask = np.ones((k + 1, 1))
    mask[-1, 0] = 0.0  # bias row unregularized
    for _ in range(int(iters)):
        P = _softmax(Xb @ W)
        G = Xb.T @ (P - Y) / n
        if l2 > 0:
            G = G + l2 * (W * mask)
        if l1 > 0:
            G = G + l1 * np.sign(W) * mask
        W = W - lr * G
        if not np.abs(W).max() < DIVERGENCE_LIMIT:
            return None
    return W


def predict_probabilities(W: np.ndarray, X: np.ndarray) -> np.ndarray:
    Xb = np.column_stack([X, np.ones(len(X))])
    return _softmax(Xb @ W)


def toy_space(dim: int) -> SearchSpace:
    """Cumulative tuning space: iteration count and step size, then an L2
    penalty, then an L1 penalty and label smoothing."""
    e = math.e
    all_params = (
        ParamSpec("iters", 0.25, 2048, scale="log", round_to_int=True),
        ParamSpec("lr", e ** -7, 1.0, scale="log"),
        ParamSpec("l2", e ** -7, e ** 7, scale="log"),
        ParamSpec("l1", e ** -7, e ** 7, scale="log"),
        ParamSpec("smooth", e ** -10, e ** -1, scale="log"),
    )
    if dim == 2:
        return SearchSpace(all_params[:2])
    if dim == 3:
        return SearchSpace(all_params[:3])
    if dim == 5:
        return SearchSpace(all_params)
    raise ValueError(f"supported dims are 2, 3, 5; got {dim}")


class ToyHpoProblem(Problem):
    """Cross-validated log loss of the logistic learner as a function of its
    hyperparameters, over the internal (log-scaled) search box."""

    def __init__(self, dataset_name: str, dim: int):
        self.dataset = load_dataset(dataset_name)
        self.space = toy_space(dim)
        self.folds = fold_assignment(len(self.dataset.X), dataset_name)
        super().__init__(
            problem_id=f"hpo_{dataset_name}_d{dim}",
            domain=self.space.internal_domain(),
            problem_class="hpo",
            metadata={"dataset": dataset_name, "n_classes": self.dataset.n_classes},
        )

    def evaluate(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float).ravel()
        if x.size != self.dim:
            raise DomainError(f"expected {self.dim} coordinates, got {x.size}")
        params = self.space.to_eval_space(x)
        iters = params["iters"]
        lr = params["lr"]
        l2 = params.get("l2", DEFAULT_L2)
        l1 = params.get("l1", DEFAULT_L1)
        smooth = params.get("smooth", DEFAULT_SMOOTH)

        data = self.dataset
        n = len(data.X)
        per_sample = np.empty(n)
        for f in range(N_FOLDS):
            held = self.folds == f
            W = train_logistic(
                data.X[~held],
                data.y[~held],
                data.n_classes,
                iters=iters,
                lr=lr,
                l2=l2,
                l1=l1,
                smooth=smooth,
            )
            if W is None:
                # diverged training scores the clamp worst case on its fold
                per_sample[held] = -np.log(PROB_EPS)
            else:
                P = predict_probabilities(W, data.X[held])
                p_true = np.clip(
                    P[np.arange(int(held.sum())), data.y[held]],
                    PROB_EPS,
                    1.0 - PROB_EPS,
                )
                per_sample[held] = -np.log(p_true)
        return float(per_sample.mean())


def toy_problem_grid() -> list[ToyHpoProblem]:
    """All bundled dataset x dimension combinations (nine problems)."""
    return [ToyHpoProblem(name, dim) for name in DATASETS for dim in TOY_DIMS]
