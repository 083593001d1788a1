"""Toeplitz rank search with tracked column transformations.

Each step works on the constant coefficient ``[L | R]`` of the current
matrix, where ``L`` holds the columns frozen so far.  The step applies

    N_i = [[I, Z Q], [0, Q]],   Z = -pinv(L) R,

to every coefficient, where ``Q`` column-compresses ``R + L Z``.  The newly
independent columns join the frozen block and the remaining trailing columns,
whose constant coefficient is now zero, are divided by ``(lam - point)``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .densela import column_compress, least_squares_solve, numerical_rank
from .exceptions import (
    InsufficientSeriesOrder,
    MaxOrderExceeded,
    NormalRankExceeded,
    RankDecrease,
)
from .polymat import LaurentMatrix, ZeroFunction, evaluate, trim_leading

logger = logging.getLogger(__name__)

SCALES = ("local", "global", "trailing")

# Rounding in the transformed stack grows like eps * ||P|| * ||Z|| / sigma_min(L),
# so per-step rank decisions need far more headroom than a single SVD.
DEFAULT_TOL_REL = 1e-11


@dataclass(frozen=True)
class StepRecord:
    index: int
    rank: int  # rho_i
    nullity: int  # nu_i = n - rho_i
    Z: np.ndarray  # rho_{i-1} x nu_{i-1}
    Q: np.ndarray  # nu_{i-1} x nu_{i-1}, unitary
    added: int  # rho_i - rho_{i-1}
    cutoff: float

    @property
    def frozen_before(self):
        return self.rank - self.added

    def transform(self):
        """The full ``n x n`` constant matrix ``N_i``."""
        n = self.rank + self.nullity
        p = self.frozen_before
        N = np.eye(n, dtype=complex)
        N[:p, p:] = self.Z @ self.Q
        N[p:, p:] = self.Q
        return N


@dataclass(frozen=True, eq=False)
class RankSearchTrace:
    """Everything the search decided, enough to rebuild the decomposition."""

    point: complex
    pole_order: int
    normal_rank: int
    steps: tuple
    final: LaurentMatrix  # P^{(d')} in the transformed column basis
    col_shifts: np.ndarray  # number of divisions applied to each column

    @property
    def stop_order(self):
        return len(self.steps) - 1

    @property
    def rho(self):
        return tuple(s.rank for s in self.steps)

    @property
    def multiplicities(self):
        return tuple(int(x) for x in np.diff((0,) + self.rho))

    @property
    def cumulative_ranks(self):
        """``sum_{i<=k} rho_i``, the ranks of ``T_k`` of the scaled function."""
        return tuple(int(x) for x in np.cumsum(self.rho))


def apply_step_to_stack(stack, n_frozen, Z, Q, n_keep=None, exact=True):
    """Apply ``N_i`` to every coefficient and divide trailing columns by ``lam``.

    ``stack`` has shape ``(K, m, n)``; the first ``n_frozen`` columns are the
    frozen block the step started from.  Columns from ``n_keep`` on are
    shifted down one coefficient; pass ``n_keep=None`` to skip the shift.
    Exact stacks keep their length (the vacated top block is zero), inexact
    ones lose their last known coefficient.
    """
    out = np.array(stack, dtype=complex, copy=True)
    p = n_frozen
    if out.shape[2] > p:
        trailing = out[:, :, p:]
        if p:
            trailing = trailing + out[:, :, :p] @ Z
        out[:, :, p:] = trailing @ Q
    if n_keep is None or n_keep >= out.shape[2]:
        return out
    if not exact and out.shape[0] <= 1:
        raise InsufficientSeriesOrder("series exhausted while dividing out a zero constant term")
    out[:-1, :, n_keep:] = out[1:, :, n_keep:]
    out[-1, :, n_keep:] = 0
    if not exact:
        out = out[:-1]
    return out


def default_max_order(M, pole_order=0):
    """Safe bound on the stopping order for ``M`` already scaled to ``lowest == 0``."""
    if M.exact:
        return pole_order + min(M.shape) * M.highest + 1
    return M.highest


def search(M, r, tol_rel=None, tol_abs=0.0, max_order=None, scale="global", pole_order=0, cap_rank=False):
    """Run the rank search on a function with no pole at its expansion point.

    Parameters
    ----------
    M : LaurentMatrix
        Expansion with ``lowest == 0`` (scale poles out first).
    r : int
        Normal rank; the search stops at the first step whose rank reaches it.
    tol_rel, tol_abs : float
        Rank cutoff ``max(tol_abs, tol_rel * scale)``; ``tol_rel`` defaults to
        :data:`DEFAULT_TOL_REL`.
    scale : {"local", "global", "trailing"}
        What the cutoff is measured against: ``"local"`` uses the largest
        singular value of the current constant block ``[L | R]``,
        ``"global"`` the Frobenius norm of the input stack (sturdier for
        coefficients with a large dynamic range), ``"trailing"`` the norm of
        the whole stack of the columns still being searched.
    pole_order : int
        Recorded in the trace and used in the default ``max_order``.
    cap_rank : bool
        Never let a step exceed ``r``; keep the ``r - frozen`` dominant
        directions instead of raising :class:`NormalRankExceeded`.
    """
    if M.lowest != 0:
        raise ValueError("search expects a stack with lowest exponent 0; scale poles out first")
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {SCALES}")
    m, n = M.shape
    if not 1 <= r <= min(m, n):
        raise ValueError(f"normal rank {r} outside 1..{min(m, n)}")
    if tol_rel is None:
        tol_rel = DEFAULT_TOL_REL
    if max_order is None:
        max_order = default_max_order(M, pole_order)
    global_scale = float(np.linalg.norm(M.coeffs))

    stack = np.array(M.coeffs, dtype=complex)
    shifts = np.zeros(n, dtype=int)
    steps = []
    frozen = 0
    for i in range(max_order + 1):
        if stack.shape[0] == 0:
            raise InsufficientSeriesOrder(f"series exhausted at step {i} before reaching rank {r}")
        C = stack[0]
        L, R = C[:, :frozen], C[:, frozen:]
        Z = least_squares_solve(L, -R) if frozen else np.zeros((0, n), dtype=complex)
        if scale == "local":
            ref = numerical_rank(C, 0.0).singular_values
            ref = ref[0] if ref.size else 0.0
        elif scale == "global":
            ref = global_scale
        else:
            tail = stack[:, :, frozen:]
            if frozen:
                tail = tail + stack[:, :, :frozen] @ Z
            ref = float(np.linalg.norm(tail))
        cutoff = max(float(tol_abs), tol_rel * ref)
        W = R + L @ Z if frozen else R
        Q, added = column_compress(W, tol_rel=0.0, tol_abs=cutoff, max_rank=(r - frozen) if cap_rank else None)
        rank = frozen + added
        if rank > r:
            raise NormalRankExceeded(
                f"step {i} found rank {rank} above the normal rank {r}; "
                "the rank estimate or tolerance is off"
            )
        done = rank == r
        stack = apply_step_to_stack(stack, frozen, Z, Q, None if done else rank, M.exact)
        if done:
            # numerically negligible remainder of the compressed block
            stack[0, :, rank:] = 0
        if numerical_rank(stack[0, :, :rank], 0.0, cutoff).rank < rank:
            raise RankDecrease(f"frozen block lost full column rank at step {i}")
        steps.append(StepRecord(i, rank, n - rank, Z, Q, added, cutoff))
        logger.debug("step %d: rho=%d cutoff=%.3e", i, rank, cutoff)
        if done:
            final = LaurentMatrix(stack, M.point, 0, M.exact)
            return RankSearchTrace(M.point, int(pole_order), int(r), tuple(steps), final, shifts)
        shifts[rank:] += 1
        frozen = rank
    raise MaxOrderExceeded(
        f"rank search did not reach normal rank {r} within {max_order + 1} steps "
        f"(reached {frozen})"
    )


def estimate_normal_rank(M, trials=5, tol_rel=None, tol_abs=0.0, seed=0, radius=(0.5, 2.0)):
    """Largest numerical rank of ``M`` over random points on an annulus about its point."""
    if isinstance(M, ZeroFunction):
        return 0
    M = trim_leading(M)
    if isinstance(M, ZeroFunction):
        return 0
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    best = 0
    for _ in range(trials):
        rad = rng.uniform(*radius)
        theta = rng.uniform(0.0, 2 * np.pi)
        lam = M.point + rad * np.exp(1j * theta)
        best = max(best, numerical_rank(evaluate(M, lam), tol_rel, tol_abs).rank)
    return best
