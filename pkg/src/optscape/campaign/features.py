"""Feature extraction over a configured problem set.

One seeded min-max Latin hypercube design of 50 * dim points per problem,
standardized responses, and the full 38-feature catalog. Problems whose
samples are degenerate (constant responses, for instance) are excluded and
logged rather than poisoning the matrix.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path

import numpy as np

from ..design import DegenerateSampleError, denormalize, lhs_minmax, standardize_y
from ..ela import FEATURE_NAMES, compute_all
from .config import ExperimentConfig
from .runner import build_problem, plan_problems, stable_seed

POINTS_PER_DIM = 50
LHS_RESTARTS = 100


class FeaturesError(RuntimeError):
    """No problem produced a usable feature row."""


def feature_seed(base_seed: int, problem_id: str) -> int:
    return stable_seed("features", base_seed, problem_id)


def problem_features(kind, ref, problem_id, dim, seed):
    """Feature dict for one problem, or raises DegenerateSampleError."""
    problem = build_problem(kind, ref)
    try:
        if problem.dim != dim:
            raise ValueError(
                f"{problem_id}: declared dim {dim} "
                f"but the problem reports {problem.dim}"
            )
        rng = np.random.default_rng(seed)
        X = lhs_minmax(POINTS_PER_DIM * dim, dim, rng, restarts=LHS_RESTARTS)
        y = problem.evaluate_many(denormalize(problem.domain, X))
        return compute_all(X, standardize_y(y))
    finally:
        if hasattr(problem, "close"):
            problem.close()


def _worker(args):
    kind, ref, pid, dim, seed, cls = args
    try:
        feats = problem_features(kind, ref, pid, dim, seed)
    except (DegenerateSampleError, ValueError) as exc:
        return ("excluded", pid, str(exc))
    return ("ok", pid, cls, dim, [feats[name] for name in FEATURE_NAMES])


def run_features(config: ExperimentConfig, out_csv, log=None) -> dict:
    """Write the feature matrix CSV; returns {"rows": n, "excluded": {...}}."""
    jobs = []
    for kind, ref, pid, dim in plan_problems(config):
        cls = "BBOB" if kind == "bbob" else "HPO"
        jobs.append((kind, ref, pid, dim, feature_seed(config.base_seed, pid), cls))

    results = []
    if config.workers == 1:
        for job in jobs:
            results.append(_worker(job))
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = [pool.submit(_worker, j) for j in jobs]
            for fut in as_completed(futures):
                results.append(fut.result())

    rows, excluded = {}, {}
    for res in results:
        if res[0] == "excluded":
            _, pid, reason = res
            excluded[pid] = reason
            if log:
                log(f"excluded {pid}: {reason}")
        else:
            _, pid, cls, dim, values = res
            rows[pid] = (cls, dim, values)

    if not rows:
        raise FeaturesError("every problem was excluded; the matrix is empty")

    out_csv = Path(out_csv)
    out_csv.parent.mkdir(parents=True, exist_ok=True)
    header = ["problem_id", "class", "dim"] + list(FEATURE_NAMES)
    lines = [",".join(header)]
    for pid in sorted(rows):
        cls, dim, values = rows[pid]
        lines.append(",".join([pid, cls, str(dim)] + [repr(float(v)) for v in values]))
    tmp = out_csv.with_name(out_csv.name + ".tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
    tmp.replace(out_csv)

    excl_path = out_csv.with_name(out_csv.stem + "_excluded.csv")
    excl_lines = ["problem_id,reason"]
    for pid in sorted(excluded):
        excl_lines.append(f"{pid},{excluded[pid]}")
    tmp = excl_path.with_name(excl_path.name + ".tmp")
    tmp.write_text("\n".join(excl_lines) + "\n", encoding="utf-8")
    tmp.replace(excl_path)

    return {"rows": len(rows), "excluded": excluded}


def load_features_csv(path):
    """Parse a feature CSV back into build_feature_matrix entries."""
    text = Path(path).read_text(encoding="utf-8").rstrip("\n")
    lines = text.split("\n")
    header = lines[0].split(",")
    if header[:3] != ["problem_id", "class", "dim"]:
        raise FeaturesError(f"unrecognized feature CSV schema in {path}")
    names = header[3:]
    entries = []
    for line in lines[1:]:
        parts = line.split(",")
        pid, cls, dim = parts[0], parts[1], int(parts[2])
        feats = {n: float(v) for n, v in zip(names, parts[3:])}
        entries.append((pid, feats, cls, dim))
    return entries, tuple(names)
