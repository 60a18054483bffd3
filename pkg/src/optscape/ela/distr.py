"""Response-distribution features: skewness, excess kurtosis, modality.

Moments use the biased (moment) estimators g1 = m3 / m2^1.5 and
g2 = m4 / m2^2 - 3. Modality is estimated from a Gaussian kernel density with
the Silverman rule-of-thumb bandwidth evaluated on a 512-point grid spanning
[min - 3h, max + 3h]; a local maximum counts as a peak when its density is at
least a tenth of the global maximum.
"""
from __future__ import annotations

import numpy as np

from ..design import DegenerateSampleError

PEAK_DENSITY_FRACTION = 0.1
GRID_SIZE = 512


def _silverman_bandwidth(z: np.ndarray) -> float:
    n = z.size
    sd = z.std(ddof=1)
    q75, q25 = np.percentile(z, [75, 25])
    iqr = q75 - q25
    lo = min(sd, iqr / 1.349)
    if lo == 0.0:
        lo = sd if sd > 0 else (abs(z[0]) if z[0] != 0 else 1.0)
    return 0.9 * lo * n ** (-0.2)


def kde_peak_count(z: np.ndarray) -> int:
    h = _silverman_bandwidth(z)
    if h <= 0 or not np.isfinite(h):
        raise DegenerateSampleError("cannot form a density bandwidth")
    grid = np.linspace(z.min() - 3 * h, z.max() + 3 * h, GRID_SIZE)
    u = (grid[:, None] - z[None, :]) / h
    dens = np.exp(-0.5 * u * u).mean(axis=1) / (h * np.sqrt(2 * np.pi))
    interior = (dens[1:-1] > dens[:-2]) & (dens[1:-1] >= dens[2:])
    qualifying = dens[1:-1] >= PEAK_DENSITY_FRACTION * dens.max()
    return int((interior & qualifying).sum())


def features_distr(z: np.ndarray) -> dict:
    z = np.asarray(z, dtype=float).ravel()
    if z.size < 4:
        raise DegenerateSampleError("need at least four observations")
    centered = z - z.mean()
    m2 = float((centered ** 2).mean())
    if m2 == 0.0:
        raise DegenerateSampleError("responses are constant")
    m3 = float((centered ** 3).mean())
    m4 = float((centered ** 4).mean())
    return {
        "ela_distr.skewness": m3 / m2 ** 1.5,
        "ela_distr.kurtosis": m4 / m2 ** 2 - 3.0,
        "ela_distr.number_of_peaks": float(kde_peak_count(z)),
    }
