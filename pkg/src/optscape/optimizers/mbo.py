"""Model-based optimization: GP surrogate + expected improvement.

Starts from a Latin hypercube design of ceil(0.08 * budget) points, then
refits the surrogate after every evaluation and proposes the expected
improvement argmax over 1000 * dim uniform candidates, refined by 50 steps
of local Gaussian perturbation with a shrinking scale.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import ndtr

from ..design import lhs_minmax
from .base import BudgetedProblem, propose_in_cube
from .gp import MaternGP

REFINE_STEPS = 50
REFINE_SCALE = 0.1
REFINE_DECAY = 0.93
CANDIDATES_PER_DIM = 1000


def initial_design_size(budget: int) -> int:
    """ceil(0.08 * budget) points before the surrogate loop starts."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    return int(math.ceil(0.08 * budget))


def expected_improvement(mean, sd, best: float):
    """EI of a Gaussian prediction against the incumbent `best`.

    (best - mean) * Phi(u) + sd * phi(u) with u = (best - mean) / sd;
    degenerates to max(best - mean, 0) where sd = 0. Accepts scalars or
    arrays; returns a float for scalar input.
    """
    scalar = np.isscalar(mean) and np.isscalar(sd)
    mean = np.atleast_1d(np.asarray(mean, dtype=float))
    sd = np.atleast_1d(np.asarray(sd, dtype=float))
    if np.any(sd < 0.0):
        raise ValueError("sd must be nonnegative")
    improve = best - mean
    out = np.maximum(improve, 0.0)
    pos = sd > 0.0
    if np.any(pos):
        u = improve[pos] / sd[pos]
        phi = np.exp(-0.5 * u**2) / math.sqrt(2.0 * math.pi)
        out[pos] = improve[pos] * ndtr(u) + sd[pos] * phi
    return float(out[0]) if scalar else out


def _propose(gp: MaternGP, X: np.ndarray, best: float, dim: int, rng: np.random.Generator) -> np.ndarray:
    cands = rng.uniform(size=(CANDIDATES_PER_DIM * dim, dim))
    mean, sd = gp.predict(cands)
    ei = expected_improvement(mean, sd, best)
    pick = cands[int(np.argmax(ei))]
    pick_ei = float(ei.max())

    scale = REFINE_SCALE
    for _ in range(REFINE_STEPS):
        trial = propose_in_cube(lambda: pick + scale * rng.standard_normal(dim))
        m, s = gp.predict_one(trial)
        trial_ei = expected_improvement(m, s, best)
        if trial_ei > pick_ei:
            pick, pick_ei = trial, trial_ei
        scale *= REFINE_DECAY

    # bitwise duplicate of an evaluated row would make the next Gram matrix
    # singular; fall back to a fresh uniform point
    if np.any(np.all(X == pick, axis=1)):
        pick = rng.uniform(size=dim)
    return pick


def run_mbo(ev: BudgetedProblem, dim: int, budget: int, rng: np.random.Generator, params: dict) -> dict:
    nugget0 = float(params.get("nugget", 1e-8))
    n_init = initial_design_size(budget)

    design = lhs_minmax(n_init, dim, rng)
    rows = [design[i] for i in range(n_init)]
    vals = [ev(u) for u in rows]
    X = np.array(rows)
    y = np.array(vals)

    escalations: list[list[int]] = []
    while ev.remaining > 0:
        gp = MaternGP(X, y, nugget=nugget0)
        if gp.escalations:
            escalations.append([ev.used + 1, gp.escalations])
        pick = _propose(gp, X, float(y.min()), dim, rng)
        val = ev(pick)
        X = np.vstack([X, pick])
        y = np.append(y, val)

    meta: dict = {"initial_design": n_init}
    if escalations:
        meta["nugget_escalations"] = escalations
    return meta
