"""Uniform random search over the unit cube."""
from __future__ import annotations

import numpy as np

from .base import BudgetedProblem


def run_random(ev: BudgetedProblem, dim: int, budget: int, rng: np.random.Generator, params: dict) -> dict:
    for _ in range(budget):
        ev(rng.uniform(size=dim))
    return {}
