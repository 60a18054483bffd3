"""Hyperparameter search spaces.

Optimizers always see a plain box: log-scaled parameters contribute the
interval [ln(lower), ln(upper)] to that internal box, linear parameters their
raw interval. :func:`SearchSpace.to_eval_space` maps an internal point to the
native parameter values; integer parameters round half-up after the scale
transform.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..domains import BoxDomain, DomainError


@dataclass(frozen=True)
class ParamSpec:
    name: str
    lower: float
    upper: float
    scale: str = "linear"  # "linear" | "log"
    round_to_int: bool = False

    def __post_init__(self):
        if not self.name:
            raise ValueError("parameter name must be non-empty")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"unknown scale {self.scale!r}")
        if not (self.lower < self.upper):
            raise ValueError(f"{self.name}: lower must be strictly below upper")
        if self.scale == "log" and self.lower <= 0:
            raise ValueError(f"{self.name}: log scale requires a positive lower bound")

    def internal_bounds(self) -> tuple[float, float]:
        if self.scale == "log":
            return math.log(self.lower), math.log(self.upper)
        return self.lower, self.upper

    def to_value(self, zi: float):
        v = math.exp(zi) if self.scale == "log" else zi
        if self.round_to_int:
            return int(math.floor(v + 0.5))
        return v


@dataclass(frozen=True)
class SearchSpace:
    params: tuple[ParamSpec, ...]

    def __post_init__(self):
        names = [p.name for p in self.params]
        if len(self.params) == 0:
            raise ValueError("search space needs at least one parameter")
        if len(set(names)) != len(names):
            raise ValueError("parameter names must be unique")

    @property
    def dim(self) -> int:
        return len(self.params)

    def internal_domain(self) -> BoxDomain:
        bounds = [p.internal_bounds() for p in self.params]
        return BoxDomain(
            np.array([b[0] for b in bounds]), np.array([b[1] for b in bounds])
        )

    def to_eval_space(self, z: Sequence[float]) -> dict:
        z = np.asarray(z, dtype=float).ravel()
        if z.size != self.dim:
            raise DomainError(f"expected {self.dim} coordinates, got {z.size}")
        dom = self.internal_domain()
        if (z < dom.lower - 1e-9).any() or (z > dom.upper + 1e-9).any():
            raise DomainError("point outside the internal search box")
        return {p.name: p.to_value(zi) for p, zi in zip(self.params, z)}


def boosting_space(dim: int) -> SearchSpace:
    """The gradient-boosting tuning space used by the external evaluator.

    Cumulative by dimension: 2 -> rounds + step size, 3 -> + L2 leaf penalty,
    5 -> + split-gain threshold and L1 leaf penalty.
    """
    e = math.e
    all_params = (
        ParamSpec("nrounds", 3, 2000, scale="log", round_to_int=True),
        ParamSpec("eta", e ** -7, 1.0, scale="log"),
        ParamSpec("lambda", e ** -7, e ** 7, scale="log"),
        ParamSpec("gamma", e ** -10, e ** 2, scale="log"),
        ParamSpec("alpha", e ** -7, e ** 7, scale="log"),
    )
    if dim == 2:
        return SearchSpace(all_params[:2])
    if dim == 3:
        return SearchSpace(all_params[:3])
    if dim == 5:
        return SearchSpace(all_params)
    raise ValueError(f"supported dims are 2, 3, 5; got {dim}")
