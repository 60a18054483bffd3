"""Coordinate transforms shared by the noiseless benchmark function suite.

All transforms operate on (n, d) row batches. Conventions: `t_osz` is the
oscillation warp applied coordinate-wise, `t_asy` the asymmetry warp with
per-coordinate exponents, `lambda_scales` the diagonal conditioning vector
alpha^(0.5 * i/(d-1)), and `boundary_penalty` the quadratic penalty for
leaving the [-5, 5] box.
"""
from __future__ import annotations

import numpy as np


def t_osz(x: np.ndarray) -> np.ndarray:
    """Oscillation warp; sign-preserving, fixes 0 -> 0."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    nz = x != 0.0
    if nz.any():
        vals = x[nz]
        xhat = np.log(np.abs(vals))
        pos = vals > 0
        c1 = np.where(pos, 10.0, 5.5)
        c2 = np.where(pos, 7.9, 3.1)
        out[nz] = np.sign(vals) * np.exp(
            xhat + 0.049 * (np.sin(c1 * xhat) + np.sin(c2 * xhat))
        )
    return out


def t_asy(Z: np.ndarray, beta: float) -> np.ndarray:
    """Asymmetry warp: positive entries raised to 1 + beta*(i/(d-1))*sqrt(z)."""
    Z = np.atleast_2d(np.asarray(Z, dtype=float))
    n, d = Z.shape
    expo = np.linspace(0.0, 1.0, d) if d > 1 else np.zeros(1)
    out = Z.copy()
    pos = Z > 0
    if pos.any():
        E = 1.0 + beta * np.broadcast_to(expo, Z.shape)[pos] * np.sqrt(Z[pos])
        out[pos] = Z[pos] ** E
    return out


def lambda_scales(alpha: float, d: int) -> np.ndarray:
    """Diagonal of the conditioning matrix: alpha^(0.5 * i/(d-1)), i = 0..d-1."""
    expo = np.linspace(0.0, 1.0, d) if d > 1 else np.zeros(1)
    return alpha ** (0.5 * expo)


def boundary_penalty(X: np.ndarray, bound: float = 5.0) -> np.ndarray:
    """Row-wise sum of max(0, |x_i| - bound)^2."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    over = np.maximum(0.0, np.abs(X) - bound)
    return (over * over).sum(axis=1)


def rotation_matrix(rng: np.random.Generator, d: int) -> np.ndarray:
    """Orthogonal matrix from the QR of an iid normal draw, sign-normalized.

    Column signs are fixed so diag(R) of the decomposition is nonnegative;
    this makes the draw a deterministic function of the generator state.
    """
    A = rng.standard_normal((d, d))
    Qm, Rm = np.linalg.qr(A)
    signs = np.where(np.diagonal(Rm) >= 0.0, 1.0, -1.0)
    return Qm * signs
