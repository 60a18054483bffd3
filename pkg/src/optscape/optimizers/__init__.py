"""Black-box minimizers behind one interface, all working in the unit cube."""
from .base import (
    RESAMPLE_LIMIT,
    BudgetedProblem,
    BudgetError,
    BudgetExceededError,
    EvaluationFailedError,
    Trace,
    propose_in_cube,
)
from .cmaes import population_size
from .gensa import acceptance_probability, temperature, visit_values
from .gp import GPFitError, MaternGP, matern52
from .grid import grid_resolution, make_grid
from .mbo import expected_improvement, initial_design_size
from .registry import VARIANT_NAMES, OptimizerSpec, minimum_budget, run

__all__ = [
    "RESAMPLE_LIMIT",
    "BudgetedProblem",
    "BudgetError",
    "BudgetExceededError",
    "EvaluationFailedError",
    "GPFitError",
    "MaternGP",
    "OptimizerSpec",
    "Trace",
    "VARIANT_NAMES",
    "acceptance_probability",
    "expected_improvement",
    "grid_resolution",
    "initial_design_size",
    "make_grid",
    "matern52",
    "minimum_budget",
    "population_size",
    "propose_in_cube",
    "run",
    "temperature",
    "visit_values",
]
