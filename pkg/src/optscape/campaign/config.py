"""Experiment configuration: JSON in, validated immutable config out.

The config identifies an experiment (problems, optimizers, budget rule,
replications, base seed); output directory and worker count are execution
details and may be overridden by OPTSCAPE_OUTPUT_DIR / OPTSCAPE_WORKERS.
Only identity fields enter the config hash used for resume checks.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass

from ..bbob import SUITE_DIMS, VALID_FIDS, VALID_IIDS
from ..optimizers import OptimizerSpec

DEFAULT_BUDGET_MULTIPLIER = 50
DEFAULT_REPLICATIONS = 10


class ConfigError(ValueError):
    """The configuration file is invalid."""


@dataclass(frozen=True)
class OptimizerEntry:
    id: str
    variant: str
    params: tuple  # sorted (key, value) pairs

    def spec(self) -> OptimizerSpec:
        return OptimizerSpec(self.variant, dict(self.params))


@dataclass(frozen=True)
class ExperimentConfig:
    bbob_fids: tuple
    bbob_iids: tuple
    bbob_dims: tuple
    toy_hpo: bool
    external: tuple  # (id, command tuple, dim) triples
    optimizers: tuple
    budget_multiplier: int
    replications: int
    base_seed: int
    output_dir: str
    workers: int

    def budget(self, dim: int) -> int:
        return self.budget_multiplier * dim

    def identity_dict(self) -> dict:
        """The experiment-defining fields, bit for bit."""
        return {
            "bbob_fids": list(self.bbob_fids),
            "bbob_iids": list(self.bbob_iids),
            "bbob_dims": list(self.bbob_dims),
            "toy_hpo": self.toy_hpo,
            "external": [
                {"id": i, "cmd": list(c), "dim": d} for i, c, d in self.external
            ],
            "optimizers": [
                {"id": o.id, "variant": o.variant, "params": dict(o.params)}
                for o in self.optimizers
            ],
            "budget_multiplier": self.budget_multiplier,
            "replications": self.replications,
            "base_seed": self.base_seed,
        }

    def config_hash(self) -> str:
        canon = json.dumps(self.identity_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()


def _require(cond, msg):
    if not cond:
        raise ConfigError(msg)


def parse_config(raw: dict, base_dir: str = ".") -> ExperimentConfig:
    _require(isinstance(raw, dict), "config must be a JSON object")
    known = {
        "problems", "optimizers", "budget_multiplier", "replications",
        "base_seed", "output_dir", "workers",
    }
    unknown = set(raw) - known
    _require(not unknown, f"unknown config keys: {sorted(unknown)}")

    problems = raw.get("problems", {})
    _require(isinstance(problems, dict), "problems must be an object")
    bbob = problems.get("bbob", {})
    fids = tuple(sorted(set(bbob.get("fids", []))))
    iids = tuple(sorted(set(bbob.get("iids", []))))
    dims = tuple(sorted(set(bbob.get("dims", []))))
    for f in fids:
        _require(f in VALID_FIDS, f"bbob fid {f} outside 1..24")
    for i in iids:
        _require(i in VALID_IIDS, f"bbob iid {i} outside 1..5")
    for d in dims:
        _require(d in SUITE_DIMS, f"bbob dim {d} not in {sorted(SUITE_DIMS)}")
    if fids or iids or dims:
        _require(fids and iids and dims,
                 "bbob grid needs fids, iids, and dims together")

    toy = bool(problems.get("toy_hpo", False))

    external = []
    for ent in problems.get("external", []):
        _require(isinstance(ent, dict) and "id" in ent and "cmd" in ent and "dim" in ent,
                 "external entries need id, cmd, and dim")
        cmd = ent["cmd"]
        _require(isinstance(cmd, list) and cmd and all(isinstance(c, str) for c in cmd),
                 "external cmd must be a nonempty list of strings")
        _require(ent["dim"] in (2, 3, 5), "external dim must be 2, 3, or 5")
        external.append((str(ent["id"]), tuple(cmd), int(ent["dim"])))
    ext_ids = [e[0] for e in external]
    _require(len(ext_ids) == len(set(ext_ids)), "duplicate external problem ids")

    _require(fids or toy or external, "config defines no problems")

    opt_raw = raw.get("optimizers")
    _require(isinstance(opt_raw, list) and opt_raw, "optimizers must be a nonempty list")
    entries = []
    for ent in opt_raw:
        _require(isinstance(ent, dict) and "name" in ent, "optimizer entries need a name")
        variant = ent["name"]
        params = ent.get("params", {})
        _require(isinstance(params, dict), "optimizer params must be an object")
        arm_id = str(ent.get("id", variant))
        try:
            OptimizerSpec(variant, params)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"optimizer {arm_id}: {exc}") from exc
        entries.append(OptimizerEntry(arm_id, variant, tuple(sorted(params.items()))))
    ids = [e.id for e in entries]
    _require(len(ids) == len(set(ids)), "duplicate optimizer ids")

    mult = raw.get("budget_multiplier", DEFAULT_BUDGET_MULTIPLIER)
    reps = raw.get("replications", DEFAULT_REPLICATIONS)
    seed = raw.get("base_seed", 0)
    _require(isinstance(mult, int) and mult >= 1, "budget_multiplier must be an int >= 1")
    _require(isinstance(reps, int) and reps >= 1, "replications must be an int >= 1")
    _require(isinstance(seed, int) and 0 <= seed < 2**63, "base_seed must fit in 63 bits")

    out_dir = os.environ.get("OPTSCAPE_OUTPUT_DIR") or raw.get("output_dir", "")
    _require(isinstance(out_dir, str) and out_dir, "output_dir is required")
    if not os.path.isabs(out_dir):
        out_dir = os.path.normpath(os.path.join(base_dir, out_dir))

    workers_env = os.environ.get("OPTSCAPE_WORKERS")
    workers = int(workers_env) if workers_env else raw.get("workers", 1)
    _require(isinstance(workers, int) and workers >= 1, "workers must be an int >= 1")

    return ExperimentConfig(
        bbob_fids=fids,
        bbob_iids=iids,
        bbob_dims=dims,
        toy_hpo=toy,
        external=tuple(external),
        optimizers=tuple(entries),
        budget_multiplier=mult,
        replications=reps,
        base_seed=seed,
        output_dir=out_dir,
        workers=workers,
    )


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return parse_config(raw, base_dir=os.path.dirname(os.path.abspath(path)))
