"""Best-of-restarts k-means with silhouette-based model selection."""
from __future__ import annotations

import numpy as np

MAX_ITER = 300


def _distances_sq(points, centroids):
    diff = points[:, None, :] - centroids[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _plusplus_init(points, k, rng):
    n = points.shape[0]
    centroids = np.empty((k, points.shape[1]))
    centroids[0] = points[rng.integers(n)]
    d2 = ((points - centroids[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total == 0.0:
            centroids[j] = points[rng.integers(n)]
        else:
            centroids[j] = points[rng.choice(n, p=d2 / total)]
        d2 = np.minimum(d2, ((points - centroids[j]) ** 2).sum(axis=1))
    return centroids


def _lloyd(points, centroids, k):
    assign = np.full(points.shape[0], -1)
    for _ in range(MAX_ITER):
        d2 = _distances_sq(points, centroids)
        new_assign = d2.argmin(axis=1)
        for j in range(k):
            members = new_assign == j
            if not members.any():
                # revive an empty cluster with the point farthest from its centroid
                worst = int(d2[np.arange(len(points)), new_assign].argmax())
                centroids[j] = points[worst]
                new_assign[worst] = j
                members = new_assign == j
            centroids[j] = points[members].mean(axis=0)
        if np.array_equal(new_assign, assign):
            break
        assign = new_assign
    inertia = float(((points - centroids[assign]) ** 2).sum())
    return assign, centroids, inertia


def kmeans(points, k, seed, restarts=25):
    """Squared-Euclidean k-means, best inertia over seeded restarts."""
    points = np.asarray(points, dtype=float)
    n = points.shape[0]
    if k < 1:
        raise ValueError("k must be at least 1")
    if n < k:
        raise ValueError("need at least k points")
    best = None
    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.default_rng(child)
        centroids = _plusplus_init(points, k, rng)
        assign, centroids, inertia = _lloyd(points, centroids, k)
        if best is None or inertia < best[2]:
            best = (assign, centroids, inertia)
    return best[0], best[1]


def silhouette_widths(points, assignments) -> np.ndarray:
    """Per-point silhouette width (b - a) / max(a, b); singletons score 0."""
    points = np.asarray(points, dtype=float)
    assignments = np.asarray(assignments)
    labels = np.unique(assignments)
    if labels.size < 2:
        raise ValueError("silhouette needs at least 2 clusters")
    diff = points[:, None, :] - points[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    widths = np.zeros(points.shape[0])
    for i in range(points.shape[0]):
        own = assignments == assignments[i]
        if own.sum() == 1:
            continue
        a = dist[i, own].sum() / (own.sum() - 1)
        b = min(dist[i, assignments == lab].mean() for lab in labels if lab != assignments[i])
        denom = max(a, b)
        widths[i] = 0.0 if denom == 0.0 else (b - a) / denom
    return widths


def silhouette_select(points, k_range=range(2, 9), seed=0, restarts=25):
    """The k maximizing mean silhouette width; ties go to the smaller k."""
    points = np.asarray(points, dtype=float)
    best_k, best_width = None, -np.inf
    for k in k_range:
        if k < 2:
            raise ValueError("silhouette selection needs k >= 2")
        if k > points.shape[0] - 1:
            break
        assign, _ = kmeans(points, k, seed=seed, restarts=restarts)
        width = float(silhouette_widths(points, assign).mean())
        if width > best_width:
            best_k, best_width = k, width
    if best_k is None:
        raise ValueError("no feasible k in range")
    return best_k
