"""Covariance matrix adaptation evolution strategy, plain single-run form.

Standard weighted-recombination CMA-ES with cumulation paths and step-size
control, started at the cube center with sigma0 = 0.5 (unit-cube units) and
no restarts. Out-of-cube samples are redrawn up to the shared resample limit,
then clipped; after a clip the displacement is recomputed so the distribution
update stays consistent with the point actually evaluated.
"""
from __future__ import annotations

import math

import numpy as np

from .base import RESAMPLE_LIMIT, BudgetedProblem


def population_size(d: int) -> int:
    """Default population lambda = 4 + floor(3 ln d)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return 4 + int(math.floor(3.0 * math.log(d)))


def run_cmaes(ev: BudgetedProblem, dim: int, budget: int, rng: np.random.Generator, params: dict) -> dict:
    sigma = float(params.get("sigma0", 0.5))
    lam = population_size(dim)
    mu = lam // 2
    raw = np.log((lam + 1) / 2.0) - np.log(np.arange(1, mu + 1))
    weights = raw / raw.sum()
    mu_eff = 1.0 / np.sum(weights**2)

    c_sigma = (mu_eff + 2.0) / (dim + mu_eff + 5.0)
    d_sigma = 1.0 + 2.0 * max(0.0, math.sqrt((mu_eff - 1.0) / (dim + 1.0)) - 1.0) + c_sigma
    c_c = (4.0 + mu_eff / dim) / (dim + 4.0 + 2.0 * mu_eff / dim)
    c_1 = 2.0 / ((dim + 1.3) ** 2 + mu_eff)
    c_mu = min(1.0 - c_1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((dim + 2.0) ** 2 + mu_eff))
    chi_n = math.sqrt(dim) * (1.0 - 1.0 / (4.0 * dim) + 1.0 / (21.0 * dim**2))

    mean = np.full(dim, 0.5)
    C = np.eye(dim)
    p_sigma = np.zeros(dim)
    p_c = np.zeros(dim)
    gen = 0

    while ev.remaining > 0:
        # eigendecomposition each generation; budgets here are small
        C = (C + C.T) / 2.0
        eigvals, B = np.linalg.eigh(C)
        eigvals = np.maximum(eigvals, 1e-20)
        D = np.sqrt(eigvals)

        n_offspring = min(lam, ev.remaining)
        Y = np.empty((n_offspring, dim))
        f = np.empty(n_offspring)
        for i in range(n_offspring):
            for _ in range(RESAMPLE_LIMIT):
                z = rng.standard_normal(dim)
                yi = B @ (D * z)
                xi = mean + sigma * yi
                if np.all(xi >= 0.0) and np.all(xi <= 1.0):
                    break
            else:
                xi = np.clip(xi, 0.0, 1.0)
                yi = (xi - mean) / sigma
            Y[i] = yi
            f[i] = ev(xi)

        if n_offspring < lam:
            break  # truncated final generation: evaluate, no update

        order = np.argsort(f, kind="stable")[:mu]
        y_w = weights @ Y[order]
        mean = mean + sigma * y_w

        # step-size path uses C^(-1/2) = B D^-1 B^T
        c_inv_sqrt_yw = B @ ((B.T @ y_w) / D)
        p_sigma = (1.0 - c_sigma) * p_sigma + math.sqrt(
            c_sigma * (2.0 - c_sigma) * mu_eff
        ) * c_inv_sqrt_yw
        gen += 1
        denom = math.sqrt(1.0 - (1.0 - c_sigma) ** (2.0 * gen))
        h_sigma = float(
            np.linalg.norm(p_sigma) / denom / chi_n < 1.4 + 2.0 / (dim + 1.0)
        )

        p_c = (1.0 - c_c) * p_c + h_sigma * math.sqrt(
            c_c * (2.0 - c_c) * mu_eff
        ) * y_w

        rank_mu = (weights[:, None, None] * (Y[order][:, :, None] * Y[order][:, None, :])).sum(axis=0)
        delta = (1.0 - h_sigma) * c_c * (2.0 - c_c)
        C = (
            (1.0 - c_1 - c_mu) * C
            + c_1 * (np.outer(p_c, p_c) + delta * C)
            + c_mu * rank_mu
        )

        sigma = sigma * math.exp(
            (c_sigma / d_sigma) * (np.linalg.norm(p_sigma) / chi_n - 1.0)
        )

    return {"population": lam, "generations": gen}
