"""On-disk result store: immutable CSV traces plus a resume manifest.

One CSV per (problem, optimizer, replication) cell, written atomically via
write-then-rename, so a file's presence is the completion marker. The
manifest pins the config hash; resuming against a store built from a
different config aborts.
"""
from __future__ import annotations

import csv
import json
import os
from pathlib import Path

import numpy as np

from ..metrics import RunRecord
from ..optimizers import Trace
from .config import ExperimentConfig

STORE_FORMAT = 1


class StoreError(RuntimeError):
    """The store is missing, corrupt, or belongs to a different config."""


def _atomic_write(path: Path, text: str):
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


class ResultStore:
    def __init__(self, root):
        self.root = Path(root)

    @property
    def traces_dir(self) -> Path:
        return self.root / "traces"

    @property
    def failed_dir(self) -> Path:
        return self.root / "failed"

    @property
    def manifest_path(self) -> Path:
        return self.root / "manifest.json"

    @classmethod
    def create(cls, root, config: ExperimentConfig) -> "ResultStore":
        """Open a store for this config, creating or resuming as needed."""
        store = cls(root)
        store.root.mkdir(parents=True, exist_ok=True)
        store.traces_dir.mkdir(exist_ok=True)
        store.failed_dir.mkdir(exist_ok=True)
        cfg_hash = config.config_hash()
        if store.manifest_path.exists():
            manifest = json.loads(store.manifest_path.read_text(encoding="utf-8"))
            if manifest.get("config_hash") != cfg_hash:
                raise StoreError(
                    "store at {} was built from a different config".format(root)
                )
        else:
            _atomic_write(
                store.manifest_path,
                json.dumps(
                    {"config_hash": cfg_hash, "format": STORE_FORMAT},
                    sort_keys=True, indent=2,
                ) + "\n",
            )
            _atomic_write(
                store.root / "config.json",
                json.dumps(config.identity_dict(), sort_keys=True, indent=2) + "\n",
            )
        return store

    @classmethod
    def open(cls, root) -> "ResultStore":
        store = cls(root)
        if not store.manifest_path.exists():
            raise StoreError(f"no result store at {root}")
        return store

    def config_identity(self) -> dict:
        return json.loads((self.root / "config.json").read_text(encoding="utf-8"))

    @staticmethod
    def cell_id(problem_id: str, optimizer_id: str, rep: int) -> str:
        return f"{problem_id}__{optimizer_id}__r{rep:03d}"

    def trace_path(self, cell_id: str) -> Path:
        return self.traces_dir / f"{cell_id}.csv"

    def failed_path(self, cell_id: str) -> Path:
        return self.failed_dir / f"{cell_id}.txt"

    def completed(self) -> set:
        return {p.stem for p in self.traces_dir.glob("*.csv")}

    def failures(self) -> dict:
        return {
            p.stem: p.read_text(encoding="utf-8").strip()
            for p in sorted(self.failed_dir.glob("*.txt"))
        }

    def write_trace(self, cell_id: str, trace: Trace, rep: int):
        dim = trace.X.shape[1]
        header = ["problem_id", "optimizer", "seed", "rep", "eval_index", "y"]
        header += [f"x{j}" for j in range(dim)]
        lines = [",".join(header)]
        for i in range(len(trace)):
            row = [trace.problem_id, trace.optimizer, str(trace.seed), str(rep),
                   str(i + 1), repr(float(trace.y[i]))]
            row += [repr(float(v)) for v in trace.X[i]]
            lines.append(",".join(row))
        path = self.trace_path(cell_id)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
        os.replace(tmp, path)
        # a finished cell supersedes any stale failure marker
        failed = self.failed_path(cell_id)
        if failed.exists():
            failed.unlink()

    def mark_failed(self, cell_id: str, message: str):
        _atomic_write(self.failed_path(cell_id), message.rstrip() + "\n")

    def read_trace(self, cell_id: str):
        """Returns (trace, rep); the optimizer field holds the config arm id."""
        path = self.trace_path(cell_id)
        with path.open(encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
        if len(rows) < 2:
            raise StoreError(f"empty trace {path}")
        header = rows[0]
        dim = len(header) - 6
        if dim < 1 or header[:6] != ["problem_id", "optimizer", "seed", "rep",
                                     "eval_index", "y"]:
            raise StoreError(f"unrecognized trace schema in {path}")
        body = rows[1:]
        X = np.array([[float(v) for v in r[6:]] for r in body])
        y = np.array([float(r[5]) for r in body])
        first = body[0]
        trace = Trace(problem_id=first[0], optimizer=first[1], seed=int(first[2]),
                      X=X, y=y)
        return trace, int(first[3])

    def iter_records(self):
        """All completed cells as RunRecords, sorted by cell id."""
        out = []
        for cell in sorted(self.completed()):
            trace, _ = self.read_trace(cell)
            out.append(RunRecord.from_trace(trace))
        return out
