"""Dense complex kernels: numerical rank, least squares, column compression.

All rank decisions go through :func:`rank_cutoff` so that a rank and the
compression that realizes it can never disagree.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import NonFiniteInput, RankDeficientL

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class RankResult:
    rank: int
    singular_values: np.ndarray
    tolerance_used: float


def as_complex_matrix(A, name="matrix"):
    """Return ``A`` as a 2-D complex128 array, rejecting NaN/Inf entries."""
    arr = np.asarray(A, dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput(f"{name} contains NaN or Inf entries")
    return arr


def default_tol_rel(shape):
    return max(max(shape, default=0), 1) * EPS


def rank_cutoff(sigma_max, shape, tol_rel=None, tol_abs=0.0):
    """Singular values strictly above the returned value count toward the rank."""
    if tol_rel is None:
        tol_rel = default_tol_rel(shape)
    if tol_rel < 0 or tol_abs < 0:
        raise ValueError("tolerances must be nonnegative")
    return max(float(tol_abs), float(tol_rel) * float(sigma_max))


def singular_values(A):
    A = as_complex_matrix(A)
    if A.size == 0:
        return np.zeros(0)
    return scipy.linalg.svdvals(A)


def numerical_rank(A, tol_rel=None, tol_abs=0.0):
    """Numerical rank with cutoff ``max(tol_abs, tol_rel * sigma_max)``.

    ``tol_rel`` defaults to ``max(rows, cols) * eps``.
    """
    A = as_complex_matrix(A)
    s = singular_values(A)
    smax = s[0] if s.size else 0.0
    cutoff = rank_cutoff(smax, A.shape, tol_rel, tol_abs)
    return RankResult(int(np.count_nonzero(s > cutoff)), s, cutoff)


def least_squares_solve(L, B):
    """Minimum-norm least squares solution ``Z = pinv(L) @ B`` for full column rank ``L``.

    Uses an economy QR factorization of ``L`` rather than the normal equations.
    """
    L = as_complex_matrix(L, "L")
    B = as_complex_matrix(B, "B")
    m, k = L.shape
    if B.shape[0] != m:
        raise ValueError(f"row mismatch: L is {L.shape}, B is {B.shape}")
    if k == 0:
        return np.zeros((0, B.shape[1]), dtype=complex)
    if numerical_rank(L).rank < k:
        raise RankDeficientL(f"L ({m}x{k}) is numerically rank deficient")
    Qf, Rf = scipy.linalg.qr(L, mode="economic")
    return scipy.linalg.solve_triangular(Rf, Qf.conj().T @ B)


def column_compress(A, tol_rel=None, tol_abs=0.0, max_rank=None):
    """Unitary ``Q`` with ``A @ Q = [A1, 0]``, ``A1`` of full column rank.

    Returns ``(Q, rank)``.  The compression is SVD based, so the rank and the
    zeroed trailing block share one cutoff.  ``max_rank`` caps the number of
    retained directions.
    """
    A = as_complex_matrix(A)
    n = A.shape[1]
    if A.size == 0:
        return np.eye(n, dtype=complex), 0
    _, s, Vh = scipy.linalg.svd(A, full_matrices=True)
    cutoff = rank_cutoff(s[0] if s.size else 0.0, A.shape, tol_rel, tol_abs)
    rank = int(np.count_nonzero(s > cutoff))
    if max_rank is not None:
        rank = min(rank, int(max_rank))
    if rank == 0:
        return np.eye(n, dtype=complex), 0
    return Vh.conj().T, rank
