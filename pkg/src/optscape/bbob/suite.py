"""Deterministic instances of the 24-function noiseless benchmark suite.

An instance is identified by (fid, iid, dim). Its generator seed is
fid*10**6 + iid*10**3 + dim; from that stream the instance draws, in order:
the optimum location xopt ~ U[-4, 4]^dim, the target value fopt (a ratio of
two standard normals scaled to two decimals and clipped to [-1000, 1000]),
two orthogonal matrices, and any function-specific extras. Identical inputs
reproduce the instance bit for bit.

Guarantees (checked by the test suite): evaluate(xopt) == fopt to 1e-9,
evaluate(x) >= fopt everywhere, |xopt_i| <= 4, and instances that share
(fid, dim) but differ in iid have different xopt.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from ..domains import BoxDomain, DomainError, Problem
from .functions import FUNCTION_BUILDERS
from .transforms import rotation_matrix

VALID_FIDS = tuple(range(1, 25))
VALID_IIDS = tuple(range(1, 6))
SUITE_DIMS = (2, 3, 5)


def instance_seed(fid: int, iid: int, dim: int) -> int:
    return fid * 10 ** 6 + iid * 10 ** 3 + dim


@dataclass
class BBOBInstance(Problem):
    fid: int = 0
    iid: int = 0
    xopt: np.ndarray = None
    fopt: float = 0.0
    function_name: str = ""
    _core: Callable = field(default=None, repr=False)

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.ndim != 2 or X.shape[1] != self.dim:
            raise DomainError(f"expected an (n, {self.dim}) array, got {X.shape}")
        if not np.isfinite(X).all():
            raise DomainError("points must be finite")
        return self._core(X) + self.fopt

    def evaluate(self, x: np.ndarray) -> float:
        return float(self.evaluate_many(np.asarray(x, dtype=float)[None, :])[0])


def make_instance(fid: int, iid: int, dim: int) -> BBOBInstance:
    if fid not in VALID_FIDS:
        raise ValueError(f"fid must be in 1..24, got {fid}")
    if iid not in VALID_IIDS:
        raise ValueError(f"iid must be in 1..5, got {iid}")
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")

    rng = np.random.default_rng(instance_seed(fid, iid, dim))
    xopt = rng.uniform(-4.0, 4.0, size=dim)
    g1, g2 = rng.standard_normal(2)
    fopt = float(np.clip(np.round(100.0 * (100.0 * g1 / g2)) / 100.0, -1000.0, 1000.0))
    R = rotation_matrix(rng, dim)
    Q = rotation_matrix(rng, dim)

    name, builder = FUNCTION_BUILDERS[fid]
    core = builder(dim, xopt, R, Q, rng)

    return BBOBInstance(
        problem_id=f"bbob_f{fid:02d}_i{iid:02d}_d{dim:02d}",
        domain=BoxDomain.cube(dim),
        problem_class="bbob",
        metadata={"fid": fid, "iid": iid, "dim": dim, "rotations": (R, Q)},
        fid=fid,
        iid=iid,
        xopt=xopt,
        fopt=fopt,
        function_name=name,
        _core=core,
    )


def full_suite(
    fids: Sequence[int] = VALID_FIDS,
    iids: Sequence[int] = VALID_IIDS,
    dims: Sequence[int] = SUITE_DIMS,
) -> Iterator[BBOBInstance]:
    """All requested instances, enumerated fid-major, then dim, then iid."""
    for fid in fids:
        for dim in dims:
            for iid in iids:
                yield make_instance(fid, iid, dim)
