"""Campaign execution: plan cells, run them (optionally in parallel), persist.

A cell is one (problem, optimizer arm, replication). Cell seeds mix the base
seed with a hash of the cell coordinates, so any subset of cells can be run
in any order, on any worker count, and produce identical traces.
"""
from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass

from ..bbob import make_instance
from ..hpo import BrokenEvaluatorError, ExternalProblem, ProtocolError, toy_problem_grid
from ..optimizers import BudgetError, EvaluationFailedError, GPFitError, run
from .config import ExperimentConfig, OptimizerEntry
from .store import ResultStore

SEED_MASK = 2**63 - 1


def stable_seed(*parts) -> int:
    """63-bit seed from a hash of the joined parts."""
    key = ":".join(str(p) for p in parts)
    digest = hashlib.sha256(key.encode()).digest()
    return int.from_bytes(digest[:8], "big") & SEED_MASK


def cell_seed(base_seed: int, problem_id: str, optimizer_id: str, rep: int) -> int:
    return (base_seed ^ stable_seed(problem_id, optimizer_id, rep)) & SEED_MASK


@dataclass(frozen=True)
class Cell:
    cell_id: str
    problem_kind: str  # bbob | toy | external
    problem_ref: tuple
    problem_id: str
    dim: int
    optimizer: OptimizerEntry
    rep: int
    seed: int
    budget: int


def plan_problems(config: ExperimentConfig):
    """(kind, ref, problem_id, dim) for every configured problem, in order."""
    out = []
    for fid in config.bbob_fids:
        for iid in config.bbob_iids:
            for dim in config.bbob_dims:
                pid = f"bbob_f{fid:02d}_i{iid:02d}_d{dim:02d}"
                out.append(("bbob", (fid, iid, dim), pid, dim))
    if config.toy_hpo:
        for prob in toy_problem_grid():
            out.append(("toy", (prob.problem_id,), prob.problem_id, prob.dim))
    for ext_id, cmd, dim in config.external:
        out.append(("external", cmd, ext_id, dim))
    return out


def build_problem(kind: str, ref: tuple):
    if kind == "bbob":
        return make_instance(*ref)
    if kind == "toy":
        for prob in toy_problem_grid():
            if prob.problem_id == ref[0]:
                return prob
        raise ValueError(f"unknown toy problem {ref[0]}")
    if kind == "external":
        return ExternalProblem(list(ref))
    raise ValueError(f"unknown problem kind {kind}")


def plan_cells(config: ExperimentConfig):
    cells = []
    for kind, ref, pid, dim in plan_problems(config):
        for opt in config.optimizers:
            for rep in range(config.replications):
                cells.append(Cell(
                    cell_id=ResultStore.cell_id(pid, opt.id, rep),
                    problem_kind=kind,
                    problem_ref=ref,
                    problem_id=pid,
                    dim=dim,
                    optimizer=opt,
                    rep=rep,
                    seed=cell_seed(config.base_seed, pid, opt.id, rep),
                    budget=config.budget(dim),
                ))
    return cells


def execute_cell(cell: Cell):
    """Run one cell; returns ('ok', cell, trace) or ('failed', cell, message)."""
    problem = None
    try:
        problem = build_problem(cell.problem_kind, cell.problem_ref)
        if problem.dim != cell.dim:
            return ("failed", cell,
                    f"declared dim {cell.dim} but the problem reports {problem.dim}")
        trace = run(cell.optimizer.spec(), problem, cell.budget, cell.seed)
    except (BudgetError, EvaluationFailedError, GPFitError,
            BrokenEvaluatorError, ProtocolError) as exc:
        return ("failed", cell, f"{type(exc).__name__}: {exc}")
    except OSError as exc:
        return ("failed", cell, f"evaluator process error: {exc}")
    finally:
        if problem is not None and hasattr(problem, "close"):
            problem.close()
    # stored ids are the config's: the arm id names the arm uniquely even when
    # two arms share a variant, and external problems keep their configured id
    # rather than whatever name the evaluator announced
    trace = type(trace)(
        problem_id=cell.problem_id, optimizer=cell.optimizer.id,
        seed=trace.seed, X=trace.X, y=trace.y, metadata=trace.metadata,
    )
    return ("ok", cell, trace)


def run_campaign(config: ExperimentConfig, log=None) -> dict:
    """Run all missing cells; completed cells are never recomputed.

    Returns {"completed": int, "skipped": int, "failed": {cell_id: msg}}.
    """
    store = ResultStore.create(config.output_dir, config)
    done = store.completed()
    cells = plan_cells(config)
    todo = [c for c in cells if c.cell_id not in done]
    skipped = len(cells) - len(todo)
    failed = {}

    def handle(result):
        status, cell, payload = result
        if status == "ok":
            store.write_trace(cell.cell_id, payload, cell.rep)
        else:
            store.mark_failed(cell.cell_id, payload)
            failed[cell.cell_id] = payload
        if log:
            log(f"{cell.cell_id}: {status}")

    if config.workers == 1:
        for cell in todo:
            handle(execute_cell(cell))
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = [pool.submit(execute_cell, c) for c in todo]
            for fut in as_completed(futures):
                handle(fut.result())

    return {
        "completed": len(todo) - len(failed),
        "skipped": skipped,
        "failed": failed,
    }
