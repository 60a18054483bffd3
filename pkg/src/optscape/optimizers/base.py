"""Shared optimizer plumbing: traces, budget accounting, the run() entry.

Every optimizer proposes points in the unit cube; the budget wrapper
denormalizes to the problem box, counts evaluations, and records the trace.
Exceeding the budget is an optimizer bug and raises immediately.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..design import denormalize
from ..domains import Problem

RESAMPLE_LIMIT = 100


class BudgetError(ValueError):
    """Budget below the variant minimum for the given dimension."""


class BudgetExceededError(RuntimeError):
    """An optimizer requested more evaluations than its budget."""


class EvaluationFailedError(RuntimeError):
    """The objective raised; `.trace` holds the evaluations made so far."""

    def __init__(self, message: str, trace: "Trace"):
        super().__init__(message)
        self.trace = trace


@dataclass
class Trace:
    """One optimizer run: evaluated unit-cube points and raw objectives.

    `X` rows align with `y`; the incumbent sequence and 1-based evaluation
    indices are derived views. `metadata` carries variant-specific notes
    (e.g. surrogate nugget escalations).
    """

    problem_id: str
    optimizer: str
    seed: int
    X: np.ndarray
    y: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float)
        self.y = np.asarray(self.y, dtype=float).ravel()
        if self.X.ndim != 2 or self.X.shape[0] != self.y.size:
            raise ValueError("X must be (n, dim) aligned with y")

    def __len__(self) -> int:
        return self.y.size

    @property
    def eval_index(self) -> np.ndarray:
        return np.arange(1, self.y.size + 1)

    @property
    def incumbent(self) -> np.ndarray:
        return np.minimum.accumulate(self.y)

    @property
    def final_best(self) -> float:
        if self.y.size == 0:
            raise ValueError("empty trace has no best value")
        return float(self.y.min())

    @property
    def evals(self) -> list[tuple[int, np.ndarray, float]]:
        """(eval_index, x, y) triples in evaluation order."""
        return [(i + 1, self.X[i], float(self.y[i])) for i in range(len(self))]


class BudgetedProblem:
    """Counts evaluations against a fixed budget and records every call.

    Optimizers call this with unit-cube points; the wrapper maps them to the
    problem box. The (budget+1)-th call raises BudgetExceededError before
    touching the objective. An objective failure is re-raised as
    EvaluationFailedError carrying the trace accumulated so far.
    """

    def __init__(self, problem: Problem, budget: int):
        if budget < 1:
            raise BudgetError("budget must be >= 1")
        self.problem = problem
        self.budget = int(budget)
        self._rows: list[np.ndarray] = []
        self._vals: list[float] = []
        self._tag = "unknown"
        self._seed = 0
        self.metadata: dict = {}

    @property
    def used(self) -> int:
        return len(self._vals)

    @property
    def remaining(self) -> int:
        return self.budget - self.used

    @property
    def best(self) -> float:
        return min(self._vals) if self._vals else np.inf

    def __call__(self, u: np.ndarray) -> float:
        if self.used >= self.budget:
            raise BudgetExceededError(
                f"evaluation {self.used + 1} exceeds budget {self.budget}"
            )
        u = np.asarray(u, dtype=float).ravel()
        x = denormalize(self.problem.domain, u[None, :])[0]
        try:
            val = float(self.problem.evaluate(x))
        except Exception as exc:
            raise EvaluationFailedError(
                f"objective failed at evaluation {self.used + 1}: {exc}",
                self.snapshot(),
            ) from exc
        self._rows.append(u.copy())
        self._vals.append(val)
        return val

    def snapshot(self) -> Trace:
        X = (
            np.array(self._rows)
            if self._rows
            else np.empty((0, self.problem.dim))
        )
        return Trace(
            problem_id=self.problem.problem_id,
            optimizer=self._tag,
            seed=self._seed,
            X=X,
            y=np.array(self._vals),
            metadata=dict(self.metadata),
        )


def propose_in_cube(sample: Callable[[], np.ndarray]) -> np.ndarray:
    """Draw from `sample` until the point lands in [0, 1]^d, then clip.

    At most RESAMPLE_LIMIT draws; the final draw is clipped componentwise
    if still outside.
    """
    for _ in range(RESAMPLE_LIMIT):
        u = np.asarray(sample(), dtype=float)
        if np.all(u >= 0.0) and np.all(u <= 1.0):
            return u
    return np.clip(u, 0.0, 1.0)
