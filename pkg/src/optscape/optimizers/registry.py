"""Optimizer variants behind one entry point.

`run(spec, problem, budget, seed)` is the only way the rest of the package
starts an optimizer: it wires up the budget-counting unit-cube wrapper,
seeds the generator, dispatches to the variant, and returns the trace.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..domains import Problem
from .base import BudgetedProblem, BudgetError, Trace
from .cmaes import population_size, run_cmaes
from .gensa import run_gensa
from .grid import run_grid
from .mbo import initial_design_size, run_mbo
from .random_search import run_random

_VARIANTS = {
    "random": (run_random, set()),
    "grid": (run_grid, set()),
    "cmaes": (run_cmaes, {"sigma0"}),
    "gensa": (run_gensa, {"qv", "qa", "t0"}),
    "mbo": (run_mbo, {"nugget"}),
}

VARIANT_NAMES = tuple(sorted(_VARIANTS))


@dataclass(frozen=True)
class OptimizerSpec:
    """Variant name plus its (validated) parameter overrides."""

    variant: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise ValueError(
                f"unknown variant {self.variant!r}; choose from {VARIANT_NAMES}"
            )
        allowed = _VARIANTS[self.variant][1]
        extra = set(self.params) - allowed
        if extra:
            raise ValueError(
                f"{self.variant} does not accept params {sorted(extra)}"
            )
        for key, val in self.params.items():
            if not isinstance(val, (int, float)) or not np.isfinite(val):
                raise ValueError(f"param {key} must be a finite number")
        if self.params.get("sigma0", 1.0) <= 0.0:
            raise ValueError("sigma0 must be positive")
        if self.params.get("t0", 1.0) <= 0.0:
            raise ValueError("t0 must be positive")
        if not 1.0 < self.params.get("qv", 2.62) < 3.0:
            raise ValueError("qv must lie in (1, 3)")
        if self.params.get("nugget", 1e-8) <= 0.0:
            raise ValueError("nugget must be positive")


def minimum_budget(spec: OptimizerSpec, dim: int, budget: int) -> int:
    """Smallest budget the variant can run with at this dimension."""
    if spec.variant == "cmaes":
        return population_size(dim)  # at least one full generation
    if spec.variant == "mbo":
        return initial_design_size(budget) + 1  # design plus one model step
    return 1


def run(spec: OptimizerSpec, problem: Problem, budget: int, seed: int) -> Trace:
    """Execute one optimizer run; deterministic in all four arguments."""
    if budget < 1:
        raise BudgetError("budget must be >= 1")
    dim = problem.dim
    floor = minimum_budget(spec, dim, budget)
    if budget < floor:
        raise BudgetError(
            f"{spec.variant} needs a budget of at least {floor} at dim {dim}"
        )
    ev = BudgetedProblem(problem, budget)
    ev._tag = spec.variant
    ev._seed = int(seed)
    rng = np.random.default_rng(int(seed))
    fn = _VARIANTS[spec.variant][0]
    ev.metadata.update(fn(ev, dim, budget, rng, dict(spec.params)) or {})
    return ev.snapshot()
