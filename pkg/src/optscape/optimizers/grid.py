"""Grid search: a full factorial of stratum midpoints, visited in random order.

The per-axis resolution is the largest m with m^d <= budget; leftover budget
beyond m^d is intentionally unused, so the trace may be shorter than the
budget (the one sanctioned exception to exact budget consumption).
"""
from __future__ import annotations

import itertools

import numpy as np

from .base import BudgetedProblem


def grid_resolution(budget: int, d: int) -> int:
    """Largest integer m with m**d <= budget.

    Integer search rather than float budget**(1/d): powers round badly
    (100 ** (1/2) can land just below 10).
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if d < 1:
        raise ValueError("d must be >= 1")
    m = 1
    while (m + 1) ** d <= budget:
        m += 1
    return m


def make_grid(budget: int, d: int) -> np.ndarray:
    """Full factorial of per-axis stratum midpoints (i + 0.5) / m.

    Rows come out in lexicographic axis order; the run shuffles them with
    its seed before evaluating.
    """
    m = grid_resolution(budget, d)
    mids = (np.arange(m) + 0.5) / m
    return np.array(list(itertools.product(mids, repeat=d)))


def run_grid(ev: BudgetedProblem, dim: int, budget: int, rng: np.random.Generator, params: dict) -> dict:
    points = make_grid(budget, dim)
    for idx in rng.permutation(len(points)):
        ev(points[idx])
    return {"grid_resolution": grid_resolution(budget, dim)}
