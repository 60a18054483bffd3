"""Nearest reference problem lookup in principal-component space."""
from __future__ import annotations

import numpy as np


def nearest_bbob_neighbor(hpo_scores, bbob_scores) -> dict:
    """Exact Euclidean nearest neighbor per HPO problem.

    Both mappings are problem_id -> score vector from the same fitted
    projection. Distance ties go to the lexicographically smallest ID.
    """
    if not bbob_scores:
        raise ValueError("need at least one reference problem")
    ref_ids = sorted(bbob_scores)
    ref = np.array([np.asarray(bbob_scores[i], dtype=float) for i in ref_ids])
    out = {}
    for hid in sorted(hpo_scores):
        x = np.asarray(hpo_scores[hid], dtype=float)
        d2 = ((ref - x) ** 2).sum(axis=1)
        out[hid] = ref_ids[int(np.argmin(d2))]  # first min = smallest ID
    return out
