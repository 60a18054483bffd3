"""Gaussian process surrogate: Matern 5/2, constant mean, isotropic lengthscale.

Mean and process variance are profiled out of the likelihood, leaving a 1-D
concentrated negative log likelihood in the lengthscale that is minimized by
golden-section search on a fixed log bracket. A Cholesky failure escalates
the nugget by x10 up to NUGGET_MAX; the caller can inspect the nugget that
finally succeeded.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.linalg import LinAlgError, cholesky
from scipy.linalg.blas import dtrsv
from scipy.linalg.lapack import dpotri
from scipy.spatial.distance import cdist

NUGGET_MAX = 1e-2
LENGTHSCALE_BRACKET = (1e-3, 10.0)
GOLDEN_ITERS = 16
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class GPFitError(RuntimeError):
    """No nugget up to NUGGET_MAX produced a usable factorization."""


def matern52(dists: np.ndarray, lengthscale: float) -> np.ndarray:
    """Matern 5/2 correlation at the given Euclidean distances."""
    s = (math.sqrt(5.0) / lengthscale) * dists
    return (1.0 + s + s * s / 3.0) * np.exp(-s)


def _factorize(dists, lengthscale, nugget):
    """Lower Cholesky factor of the nugget-regularized correlation matrix.

    Fortran order so the BLAS triangular solves below never copy.
    """
    R = matern52(dists, lengthscale)
    R[np.diag_indices_from(R)] += nugget
    return np.asfortranarray(cholesky(R, lower=True, check_finite=False))


def _profiled(dists, y, lengthscale, nugget):
    """Factor + profiled mean/variance; raises LinAlgError when singular.

    Returns (L, beta, sigma2, w, u) with w = L^-1 1 and u = L^-1 y.
    """
    n = y.size
    L = _factorize(dists, lengthscale, nugget)
    u = dtrsv(L, y, lower=1)
    w = dtrsv(L, np.ones(n), lower=1, overwrite_x=1)
    beta = float(w @ u) / float(w @ w)
    resid = u - beta * w
    sigma2 = float(resid @ resid) / n
    return L, beta, sigma2, w, u


def _nll(dists, y, lengthscale, nugget):
    n = y.size
    try:
        L, _, sigma2, _, _ = _profiled(dists, y, lengthscale, nugget)
    except LinAlgError:
        return np.inf
    if not sigma2 > 0.0:
        return np.inf
    log_det = 2.0 * float(np.sum(np.log(np.diag(L))))
    return 0.5 * (n * math.log(sigma2) + log_det)


class MaternGP:
    """Fitted surrogate exposing predictive mean and standard deviation."""

    def __init__(self, X: np.ndarray, y: np.ndarray, nugget: float = 1e-8):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float).ravel()
        if X.ndim != 2 or X.shape[0] != y.size:
            raise ValueError("X must be (n, dim) aligned with y")
        if y.size < 2:
            raise ValueError("need at least 2 observations")
        self.X = X
        self.y = y

        # constant responses leave nothing to model: flat posterior at the
        # common value with zero predictive variance
        self._flat = bool(np.ptp(y) == 0.0)
        if self._flat:
            self.nugget = nugget
            self.escalations = 0
            self.lengthscale = 1.0
            self.beta = float(y[0])
            self.sigma2 = 0.0
            return

        dists = cdist(X, X)
        self.nugget, self.escalations = self._fit_nugget(dists, nugget)
        self.lengthscale = self._fit_lengthscale(dists, self.nugget)
        L, beta, sigma2, w, u = _profiled(dists, y, self.lengthscale, self.nugget)
        self.beta = beta
        self.sigma2 = sigma2
        # explicit inverse keeps per-query cost at one symmetric matvec;
        # the nugget bounds the conditioning so this stays accurate enough
        # for acquisition ranking
        inv, info = dpotri(L, lower=1)
        if info != 0:
            raise LinAlgError(f"dpotri failed with info {info}")
        self._Rinv = inv + np.tril(inv, -1).T
        self._alpha = dtrsv(L, u - beta * w, lower=1, trans=1)
        self._rinv1 = dtrsv(L, w, lower=1, trans=1)
        self._wtw = float(w @ w)

    def _fit_nugget(self, dists, nugget):
        """Smallest nugget on the x10 ladder whose factorization succeeds."""
        escalations = 0
        while True:
            lo, hi = LENGTHSCALE_BRACKET
            # the long-lengthscale end is the ill-conditioned one; probe it
            if np.isfinite(_nll(dists, self.y, hi, nugget)) or np.isfinite(
                _nll(dists, self.y, lo, nugget)
            ):
                return nugget, escalations
            if nugget >= NUGGET_MAX:
                raise GPFitError(
                    f"correlation matrix singular even at nugget {nugget:g}"
                )
            nugget = min(nugget * 10.0, NUGGET_MAX)
            escalations += 1

    def _fit_lengthscale(self, dists, nugget):
        """Golden-section minimum of the concentrated NLL in log lengthscale."""
        a = math.log(LENGTHSCALE_BRACKET[0])
        b = math.log(LENGTHSCALE_BRACKET[1])
        obj = lambda t: _nll(dists, self.y, math.exp(t), nugget)
        c = b - _INV_PHI * (b - a)
        d = a + _INV_PHI * (b - a)
        fc, fd = obj(c), obj(d)
        for _ in range(GOLDEN_ITERS):
            if fc <= fd:
                b, d, fd = d, c, fc
                c = b - _INV_PHI * (b - a)
                fc = obj(c)
            else:
                a, c, fc = c, d, fd
                d = a + _INV_PHI * (b - a)
                fd = obj(d)
        t = c if fc <= fd else d
        return math.exp(t)

    def predict(self, Xq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Predictive mean and sd at query rows (sd includes the profiled
        constant-mean estimation term)."""
        Xq = np.atleast_2d(np.asarray(Xq, dtype=float))
        if self._flat:
            n = Xq.shape[0]
            return np.full(n, self.beta), np.zeros(n)
        r = matern52(cdist(Xq, self.X), self.lengthscale)
        mean = self.beta + r @ self._alpha
        quad = np.einsum("ij,ij->i", r, r @ self._Rinv)
        cross = r @ self._rinv1
        var = self.sigma2 * np.maximum(
            1.0 - quad + (1.0 - cross) ** 2 / self._wtw, 0.0
        )
        return mean, np.sqrt(var)

    def predict_one(self, x: np.ndarray) -> tuple[float, float]:
        """Scalar-path predict for a single point; avoids batch overhead in
        tight acquisition-refinement loops."""
        if self._flat:
            return self.beta, 0.0
        diff = self.X - x
        r = matern52(np.sqrt(np.einsum("ij,ij->i", diff, diff)), self.lengthscale)
        mean = self.beta + float(r @ self._alpha)
        quad = float(r @ (r @ self._Rinv))
        cross = float(r @ self._rinv1)
        var = self.sigma2 * max(1.0 - quad + (1.0 - cross) ** 2 / self._wtw, 0.0)
        return mean, math.sqrt(var)
