"""Generalized simulated annealing with a Tsallis visiting distribution.

Defaults follow the generalized-SA reference: visiting shape q_v = 2.62,
acceptance parameter q_a = -5, initial temperature 5230. Each annealing step
runs a chain of 2*dim visits (first dim move all coordinates, the rest move
one coordinate each); the acceptance test uses temperature T_step / (step+1).
No local-search phase and no re-annealing.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from .base import BudgetedProblem

TAIL_LIMIT = 1e8
MIN_VISIT_BOUND = 1e-10


def temperature(step: int, t0: float, qv: float) -> float:
    """Visiting temperature at annealing step `step` (0-based)."""
    num = 2.0 ** (qv - 1.0) - 1.0
    den = float(step + 2) ** (qv - 1.0) - 1.0
    return t0 * num / den


def acceptance_probability(delta: float, t_step: float, qa: float) -> float:
    """Generalized Metropolis acceptance for an uphill move of size delta.

    Returns 0 when the generalized exponential argument leaves its support
    (large uphill moves at low temperature), which recovers strict rejection
    in the zero-temperature limit.
    """
    base = 1.0 - (1.0 - qa) * delta / t_step
    if base <= 0.0:
        return 0.0
    return math.exp(math.log(base) / (1.0 - qa))


def visit_values(temp: float, qv: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw n values from the Tsallis visiting distribution at temperature temp."""
    factor1 = math.exp(math.log(temp) / (qv - 1.0))
    factor2 = math.exp((4.0 - qv) * math.log(qv - 1.0))
    factor3 = math.exp((2.0 - qv) * math.log(2.0) / (qv - 1.0))
    factor4 = math.sqrt(math.pi) * factor2 / (factor3 * (3.0 - qv)) * factor1
    factor5 = 1.0 / (qv - 1.0) - 0.5
    d1 = 2.0 - factor5
    factor6 = math.pi * (1.0 - factor5) / math.sin(math.pi * (1.0 - factor5)) / math.exp(gammaln(d1))
    sigmax = math.exp(-(qv - 1.0) * math.log(factor6 / factor4) / (3.0 - qv))

    x = sigmax * rng.standard_normal(n)
    y = rng.standard_normal(n)
    den = np.exp((qv - 1.0) * np.log(np.abs(y)) / (3.0 - qv))
    return x / den


def _wrap(v: np.ndarray) -> np.ndarray:
    # fold into [0, 1) by double fmod, then nudge off the lower edge
    w = np.fmod(np.fmod(v, 1.0) + 1.0, 1.0)
    w[np.abs(w) < MIN_VISIT_BOUND] += MIN_VISIT_BOUND
    return w


def _clip_tail(v: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    # heavy-tail draws are re-scaled into range instead of discarded
    big = v > TAIL_LIMIT
    if np.any(big):
        v[big] = TAIL_LIMIT * rng.uniform()
    small = v < -TAIL_LIMIT
    if np.any(small):
        v[small] = -TAIL_LIMIT * rng.uniform()
    return v


def run_gensa(ev: BudgetedProblem, dim: int, budget: int, rng: np.random.Generator, params: dict) -> dict:
    qv = float(params.get("qv", 2.62))
    qa = float(params.get("qa", -5.0))
    t0 = float(params.get("t0", 5230.0))

    current = rng.uniform(size=dim)
    e_current = ev(current)
    best = e_current

    step = 0
    while ev.remaining > 0:
        temp = temperature(step, t0, qv)
        t_accept = temp / float(step + 1)
        for j in range(2 * dim):
            if ev.remaining == 0:
                break
            if j < dim:
                visit = _clip_tail(visit_values(temp, qv, dim, rng), rng)
                cand = _wrap(current + visit)
            else:
                visit = _clip_tail(visit_values(temp, qv, 1, rng), rng)
                cand = current.copy()
                k = j - dim
                cand[k : k + 1] = _wrap(cand[k : k + 1] + visit)
            e_cand = ev(cand)
            if e_cand < e_current:
                current, e_current = cand, e_cand
                best = min(best, e_cand)
            else:
                r = rng.uniform()
                if r <= acceptance_probability(e_cand - e_current, t_accept, qa):
                    current, e_current = cand, e_cand
        step += 1

    return {"annealing_steps": step}
