"""Landscape feature catalog: 38 features over five sets.

All feature functions take points X in the unit cube and standardized
responses z (see :func:`optscape.design.standardize_y`). Degenerate samples
raise :class:`optscape.design.DegenerateSampleError` rather than producing
silent NaNs.
"""
from __future__ import annotations

import numpy as np

from .disp import features_disp
from .distr import features_distr
from .ic import features_ic
from .meta import features_meta
from .nbc import features_nbc

META_NAMES = (
    "ela_meta.lin_simple.adj_r2",
    "ela_meta.lin_simple.intercept",
    "ela_meta.lin_simple.coef.min",
    "ela_meta.lin_simple.coef.max",
    "ela_meta.lin_simple.coef.max_by_min",
    "ela_meta.lin_w_interact.adj_r2",
    "ela_meta.quad_simple.adj_r2",
    "ela_meta.quad_simple.cond",
    "ela_meta.quad_w_interact.adj_r2",
)
DISTR_NAMES = (
    "ela_distr.skewness",
    "ela_distr.kurtosis",
    "ela_distr.number_of_peaks",
)
NBC_NAMES = (
    "nbc.nn_nb.sd_ratio",
    "nbc.nn_nb.mean_ratio",
    "nbc.nn_nb.cor",
    "nbc.dist_ratio.coeff_var",
    "nbc.nb_fitness.cor",
)
DISP_NAMES = tuple(
    f"disp.{kind}_{tag}"
    for kind in ("ratio_mean", "ratio_median", "diff_mean", "diff_median")
    for tag in ("02", "05", "10", "25")
)
IC_NAMES = ("ic.h.max", "ic.eps.s", "ic.eps.max", "ic.eps.ratio", "ic.m0")

FEATURE_NAMES = META_NAMES + DISTR_NAMES + NBC_NAMES + DISP_NAMES + IC_NAMES


def compute_all(X: np.ndarray, z: np.ndarray) -> dict:
    """All 38 features, keyed and ordered by FEATURE_NAMES."""
    values = {}
    values.update(features_meta(X, z))
    values.update(features_distr(z))
    values.update(features_nbc(X, z))
    values.update(features_disp(X, z))
    values.update(features_ic(X, z))
    return {name: values[name] for name in FEATURE_NAMES}


__all__ = [
    "FEATURE_NAMES",
    "META_NAMES",
    "DISTR_NAMES",
    "NBC_NAMES",
    "DISP_NAMES",
    "IC_NAMES",
    "compute_all",
    "features_meta",
    "features_distr",
    "features_nbc",
    "features_disp",
    "features_ic",
]
