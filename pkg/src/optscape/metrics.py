"""Performance statistics over optimizer runs.

Normalized regret curves, expected running time (ERT) with the 10x failure
penalty, rank tables over averaged final performance, the tie-adjusted
Friedman test, and the Nemenyi critical distance. Pure aggregation over
immutable run records; nothing here mutates shared state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import median

import numpy as np
from scipy.stats import chi2, rankdata

from .optimizers import Trace

# q_{0.05, k} / sqrt(2) for k = 2..10; the Nemenyi constant table
_NEMENYI_Q05 = {
    2: 1.960,
    3: 2.343,
    4: 2.569,
    5: 2.728,
    6: 2.850,
    7: 2.949,
    8: 3.031,
    9: 3.102,
    10: 3.164,
}

NO_SUCCESS = None  # marker returned by ert() when no replication succeeds


class DegenerateProblemError(ValueError):
    """All observed values coincide; regret normalization is undefined."""


class MissingBaselineError(ValueError):
    """ERT ratios need Random runs on every problem."""


class IncompleteDataError(ValueError):
    """A (problem, optimizer) cell has no replications."""


@dataclass(frozen=True)
class RunRecord:
    """Final outcome of one optimizer run, with its trace attached."""

    problem_id: str
    optimizer: str
    seed: int
    final_best: float
    trace: Trace | None = None

    def __post_init__(self):
        if self.trace is not None and len(self.trace):
            if self.final_best != float(self.trace.y.min()):
                raise ValueError("final_best must equal min over trace y")

    @classmethod
    def from_trace(cls, trace: Trace) -> "RunRecord":
        return cls(
            problem_id=trace.problem_id,
            optimizer=trace.optimizer,
            seed=trace.seed,
            final_best=trace.final_best,
            trace=trace,
        )


@dataclass(frozen=True)
class RankTable:
    """Problems x optimizers matrix of average-tie ranks (1 = best)."""

    problems: tuple
    optimizers: tuple
    ranks: np.ndarray

    def __post_init__(self):
        k = len(self.optimizers)
        expect = k * (k + 1) / 2.0
        sums = self.ranks.sum(axis=1)
        if not np.allclose(sums, expect, atol=1e-9):
            raise ValueError(f"each rank row must sum to {expect}")

    @property
    def mean_ranks(self) -> dict:
        means = self.ranks.mean(axis=0)
        return {opt: float(m) for opt, m in zip(self.optimizers, means)}


def normalized_regret(trace: Trace, best_overall: float, value_range: float) -> np.ndarray:
    """(incumbent_t - best_overall) / value_range, non-increasing in [0, 1].

    `best_overall` and `value_range` come from all runs on the problem, so
    every incumbent must land inside the observed value window.
    """
    if value_range == 0.0:
        raise DegenerateProblemError("zero value range on this problem")
    if value_range < 0.0:
        raise ValueError("value_range must be positive")
    inc = trace.incumbent
    curve = (inc - best_overall) / value_range
    if curve.size and (curve.min() < -1e-9 or curve.max() > 1.0 + 1e-9):
        raise ValueError("incumbents outside the observed value window")
    return np.clip(curve, 0.0, 1.0)


def first_success(trace: Trace, target: float) -> int | None:
    """1-based index of the first evaluation whose incumbent meets target."""
    hits = np.nonzero(trace.incumbent <= target)[0]
    return int(hits[0]) + 1 if hits.size else None


def ert(evals_used, success) -> float | None:
    """Sum of per-replication evaluation counts over the success count.

    `evals_used[i]` is the evaluations spent by replication i (its first
    success index when successful, everything it used otherwise). Returns
    NO_SUCCESS when nothing succeeded.
    """
    evals_used = list(evals_used)
    success = list(success)
    if not evals_used:
        raise ValueError("need at least one replication")
    if len(evals_used) != len(success):
        raise ValueError("evals_used and success must align")
    n_success = sum(bool(s) for s in success)
    if n_success == 0:
        return NO_SUCCESS
    return float(sum(evals_used)) / n_success


def rank_by_final(records) -> RankTable:
    """Rank optimizers per problem by replication-averaged final_best."""
    records = list(records)
    if not records:
        raise IncompleteDataError("no records")
    problems = tuple(sorted({r.problem_id for r in records}))
    optimizers = tuple(sorted({r.optimizer for r in records}))
    finals: dict = {}
    for r in records:
        finals.setdefault((r.problem_id, r.optimizer), []).append(r.final_best)

    ranks = np.empty((len(problems), len(optimizers)))
    for i, prob in enumerate(problems):
        means = []
        for opt in optimizers:
            cell = finals.get((prob, opt))
            if not cell:
                raise IncompleteDataError(f"no replications for {prob} / {opt}")
            means.append(float(np.mean(cell)))
        ranks[i] = rankdata(means, method="average")
    return RankTable(problems=problems, optimizers=optimizers, ranks=ranks)


def friedman(table: RankTable) -> tuple[float, int, float]:
    """Tie-adjusted Friedman chi-squared over a rank table.

    Returns (statistic, degrees of freedom, p-value); an all-tied table has
    nothing to test and reports (0, k-1, 1).
    """
    n, k = table.ranks.shape
    if k < 2:
        raise ValueError("need at least 2 optimizers")
    if n < 2:
        raise ValueError("need at least 2 problems")
    col_sums = table.ranks.sum(axis=0)
    centered = col_sums - n * (k + 1) / 2.0
    tie_term = 0.0
    for row in table.ranks:
        _, counts = np.unique(row, return_counts=True)
        tie_term += float(np.sum(counts.astype(float) ** 3 - counts))
    denom = n * k * (k + 1) - tie_term / (k - 1)
    df = k - 1
    if denom <= 0.0:
        return 0.0, df, 1.0
    stat = 12.0 * float(np.sum(centered**2)) / denom
    return stat, df, float(chi2.sf(stat, df))


def nemenyi_cd(k: int, n_problems: int, alpha: float = 0.05) -> float:
    """Critical distance q_{alpha,k} * sqrt(k(k+1) / (6N)) for mean ranks."""
    if alpha != 0.05:
        raise ValueError("only alpha = 0.05 is tabulated")
    if k not in _NEMENYI_Q05:
        raise ValueError(f"k must be in 2..10, got {k}")
    if n_problems < 2:
        raise ValueError("need at least 2 problems")
    return _NEMENYI_Q05[k] * math.sqrt(k * (k + 1) / (6.0 * n_problems))


@dataclass(frozen=True)
class ErtRatioTable:
    """Per-problem ERTs (penalty applied) and their ratios against Random."""

    problems: tuple
    optimizers: tuple
    erts: np.ndarray
    ratios: np.ndarray
    targets: dict


def ert_ratio_table(records, baseline: str = "random") -> ErtRatioTable:
    """ERT per (problem, optimizer) against the Random-derived target.

    Target per problem: median of the baseline's final values. A run
    succeeds at the first evaluation whose incumbent reaches the target and
    spends its full trace otherwise. Optimizers with zero successes on a
    problem take 10x the worst finite ERT there.
    """
    records = list(records)
    for r in records:
        if r.trace is None:
            raise ValueError(f"record {r.problem_id}/{r.optimizer} lacks a trace")
    problems = tuple(sorted({r.problem_id for r in records}))
    optimizers = tuple(sorted({r.optimizer for r in records}))
    if baseline not in optimizers:
        raise MissingBaselineError(f"no {baseline} runs present")

    by_cell: dict = {}
    for r in records:
        by_cell.setdefault((r.problem_id, r.optimizer), []).append(r)

    targets = {}
    for prob in problems:
        base = by_cell.get((prob, baseline))
        if not base:
            raise MissingBaselineError(f"no {baseline} runs on {prob}")
        targets[prob] = float(median(r.final_best for r in base))

    erts = np.empty((len(problems), len(optimizers)))
    for i, prob in enumerate(problems):
        target = targets[prob]
        raw = {}
        for j, opt in enumerate(optimizers):
            cell = by_cell.get((prob, opt))
            if not cell:
                raise IncompleteDataError(f"no replications for {prob} / {opt}")
            used, flags = [], []
            for r in cell:
                hit = first_success(r.trace, target)
                used.append(hit if hit is not None else len(r.trace))
                flags.append(hit is not None)
            raw[opt] = ert(used, flags)
        finite = [v for v in raw.values() if v is not NO_SUCCESS]
        penalty = 10.0 * max(finite)  # baseline always yields a finite ERT
        for j, opt in enumerate(optimizers):
            erts[i, j] = raw[opt] if raw[opt] is not NO_SUCCESS else penalty

    base_col = optimizers.index(baseline)
    ratios = erts / erts[:, base_col][:, None]
    return ErtRatioTable(
        problems=problems,
        optimizers=optimizers,
        erts=erts,
        ratios=ratios,
        targets=targets,
    )


def aggregate_ratios_by_dim(
    table: ErtRatioTable, dims: dict, method: str = "arithmetic"
) -> dict:
    """Mean ERT ratio per dimension per optimizer.

    `dims` maps problem_id to its dimension. The arithmetic mean is the
    default reading of "average ERT ratios"; a geometric variant is exposed
    for robustness checks.
    """
    if method not in ("arithmetic", "geometric"):
        raise ValueError("method must be arithmetic or geometric")
    groups: dict = {}
    for i, prob in enumerate(table.problems):
        groups.setdefault(dims[prob], []).append(table.ratios[i])
    out = {}
    for dim, rows in sorted(groups.items()):
        block = np.array(rows)
        if method == "arithmetic":
            agg = block.mean(axis=0)
        else:
            agg = np.exp(np.log(block).mean(axis=0))
        out[dim] = {opt: float(v) for opt, v in zip(table.optimizers, agg)}
    return out


def regret_curve_stats(curves) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise mean and standard error over replicated regret curves."""
    block = np.array(list(curves))
    if block.ndim != 2 or block.size == 0:
        raise ValueError("need a nonempty list of equal-length curves")
    mean = block.mean(axis=0)
    n = block.shape[0]
    if n == 1:
        return mean, np.zeros_like(mean)
    stderr = block.std(axis=0, ddof=1) / math.sqrt(n)
    return mean, stderr
