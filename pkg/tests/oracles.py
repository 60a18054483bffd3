"""Independent brute-force reference implementations used only by tests.

Deliberately written as plain loops from the feature definitions, sharing no
code with the package, so agreement is evidence of correctness rather than
repetition of the same bug.
"""
import math
from collections import Counter
from statistics import mean, median

import numpy as np


def euclid(a, b):
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def brute_nbc(X, z):
    """Nearest-neighbour/nearest-better distances, edges, and the five
    nearest-better features, all by exhaustive search."""
    n = len(X)
    d_nn, d_nb, nb_to = [], [], []
    for i in range(n):
        dists = [(euclid(X[i], X[j]), j) for j in range(n) if j != i]
        d_nn.append(min(d for d, _ in dists))
        better = [(d, j) for d, j in dists if z[j] < z[i]]
        if better:
            best = min(better)  # smallest distance, lowest index on ties
            d_nb.append(best[0])
            nb_to.append(best[1])
        else:
            d_nb.append(max(d for d, _ in dists))
            nb_to.append(-1)

    def sd(v):
        m = mean(v)
        return math.sqrt(sum((x - m) ** 2 for x in v) / (len(v) - 1))

    def cor(a, b):
        ma, mb = mean(a), mean(b)
        num = sum((x - ma) * (y - mb) for x, y in zip(a, b))
        den = math.sqrt(
            sum((x - ma) ** 2 for x in a) * sum((y - mb) ** 2 for y in b)
        )
        return num / den

    ratios = [a / b for a, b in zip(d_nn, d_nb)]
    indeg = [0.0] * n
    for j in nb_to:
        if j >= 0:
            indeg[j] += 1.0
    return {
        "nbc.nn_nb.sd_ratio": sd(d_nn) / sd(d_nb),
        "nbc.nn_nb.mean_ratio": mean(d_nn) / mean(d_nb),
        "nbc.nn_nb.cor": cor(d_nn, d_nb),
        "nbc.dist_ratio.coeff_var": sd(ratios) / mean(ratios),
        "nbc.nb_fitness.cor": cor(indeg, list(z)),
    }, d_nn, d_nb


def brute_disp(X, z, quantiles=(0.02, 0.05, 0.10, 0.25)):
    n = len(X)

    def spread(idx):
        pairs = [
            euclid(X[idx[a]], X[idx[b]])
            for a in range(len(idx))
            for b in range(a + 1, len(idx))
        ]
        if not pairs:
            return 0.0, 0.0
        return mean(pairs), median(pairs)

    order = sorted(range(n), key=lambda i: (z[i], i))
    full_mean, full_median = spread(list(range(n)))
    out = {}
    for q in quantiles:
        k = math.ceil(q * n)
        sub_mean, sub_median = spread(order[:k])
        tag = f"{int(round(q * 100)):02d}"
        out[f"disp.ratio_mean_{tag}"] = sub_mean / full_mean
        out[f"disp.ratio_median_{tag}"] = sub_median / full_median
        out[f"disp.diff_mean_{tag}"] = sub_mean - full_mean
        out[f"disp.diff_median_{tag}"] = sub_median - full_median
    return out


def pair_entropy_base6(symbols):
    """Entropy of consecutive unequal symbol pairs, log base 6."""
    pairs = [
        (a, b) for a, b in zip(symbols[:-1], symbols[1:]) if a != b
    ]
    m = len(symbols) - 1
    counts = Counter(pairs)
    h = 0.0
    for c in counts.values():
        p = c / m
        h -= p * math.log(p, 6)
    return h


def mc_expected_improvement(mean, sd, best, n=1_000_000, seed=0):
    """Monte-Carlo E[max(best - Y, 0)] with Y ~ Normal(mean, sd^2)."""
    rng = np.random.default_rng(seed)
    draws = mean + sd * rng.standard_normal(n)
    return float(np.maximum(best - draws, 0.0).mean())
