"""Brute-force structural indices from ranks of explicit block Toeplitz matrices.

Deliberately naive: every ``T_k`` is formed densely and ranked from scratch,
so this module can serve as ground truth for :mod:`smimc.ranksearch`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .densela import numerical_rank
from .exceptions import (
    IncompleteProfile,
    InsufficientSeriesOrder,
    MaxOrderExceeded,
    NormalRankExceeded,
    RankDecrease,
    ZeroFunctionError,
)
from .polymat import ZeroFunction, trim_leading


def build_toeplitz(M, k):
    """Upper block triangular Toeplitz matrix of the coefficients ``lowest..k``.

    Block ``(p, q)`` is the coefficient of exponent ``lowest + q - p`` for
    ``q >= p`` and zero below the diagonal.
    """
    if k < M.lowest:
        raise ValueError(f"k={k} is below the lowest exponent {M.lowest}")
    if not M.exact and k > M.highest:
        raise InsufficientSeriesOrder(f"T_{k} needs coefficients through {k}, known through {M.highest}")
    nb = k - M.lowest + 1
    m, n = M.shape
    T = np.zeros((m * nb, n * nb), dtype=complex)
    for p in range(nb):
        for q in range(p, nb):
            T[p * m : (p + 1) * m, q * n : (q + 1) * n] = M.coeff(M.lowest + q - p)
    return T


@dataclass(frozen=True)
class ToeplitzProfile:
    """Ranks ``r_k`` of ``T_k`` for ``k = lowest, lowest + 1, ...``.

    Lists are indexed from the lowest exponent, i.e. by the index of the
    pole-scaled function: ``ranks[t]`` is the rank of ``T_{lowest + t}``.
    """

    lowest: int
    normal_rank: int
    ranks: tuple
    complete: bool = True
    tolerances: tuple = field(default=(), compare=False)

    @property
    def pole_order(self):
        return max(0, -self.lowest)

    @property
    def increments(self):
        """``rho_k = r_k - r_{k-1}`` (with ``r_{lowest-1} = 0``)."""
        return tuple(int(x) for x in np.diff((0,) + tuple(self.ranks)))

    @property
    def multiplicities(self):
        """``e_t = rho_t - rho_{t-1}`` in scaled indexing."""
        return tuple(int(x) for x in np.diff((0,) + self.increments))

    @property
    def stop_order(self):
        """Largest scaled index, the first ``t`` with ``rho_t == r``."""
        if not self.complete:
            raise IncompleteProfile("profile did not reach the normal rank")
        return len(self.ranks) - 1

    @property
    def indices(self):
        return indices_from_profile(self, self.pole_order)


def oracle_profile(M, r=None, tol_rel=None, tol_abs=0.0, max_order=None):
    """Rank every ``T_k`` until the rank increment reaches ``r``.

    ``r`` defaults to a sampled estimate of the normal rank.  ``max_order``
    bounds the number of Toeplitz matrices built (scaled indexing).
    """
    M = trim_leading(M)
    if isinstance(M, ZeroFunction):
        raise ZeroFunctionError("identically zero input has an empty Toeplitz profile")
    M = M.with_lowest(min(M.lowest, 0))
    if r is None:
        from .ranksearch import estimate_normal_rank

        r = estimate_normal_rank(M)
    if r < 1:
        raise ValueError("normal rank must be at least 1")
    if max_order is None:
        if M.exact:
            ell = M.pole_order
            d_scaled = M.highest + ell
            max_order = ell + min(M.shape) * d_scaled + 1
        else:
            max_order = M.highest - M.lowest
    ranks, tols = [], []
    prev_r, prev_rho = 0, 0
    for t in range(max_order + 1):
        k = M.lowest + t
        res = numerical_rank(build_toeplitz(M, k), tol_rel, tol_abs)
        ranks.append(res.rank)
        tols.append(res.tolerance_used)
        rho = res.rank - prev_r
        if rho > r:
            raise NormalRankExceeded(f"rank increment {rho} at order {k} exceeds normal rank {r}")
        if rho < prev_rho:
            # Toeplitz increments are nondecreasing in exact arithmetic
            raise RankDecrease(
                f"rank increments decreased at order {k} ({prev_rho} -> {rho}); tolerance too loose?"
            )
        if rho == r:
            return ToeplitzProfile(M.lowest, int(r), tuple(ranks), True, tuple(tols))
        prev_r, prev_rho = res.rank, rho
    if not M.exact and max_order >= M.highest - M.lowest:
        raise InsufficientSeriesOrder(
            f"series known through order {M.highest} but the increments never reached {r}"
        )
    raise MaxOrderExceeded(f"rank increments did not reach {r} within {max_order + 1} Toeplitz blocks")


def indices_from_profile(profile, pole_order=None):
    """Sorted structural indices: scaled index ``t`` with multiplicity ``e_t``, minus ``ell``."""
    if not profile.complete:
        raise IncompleteProfile("profile did not reach the normal rank")
    ell = profile.pole_order if pole_order is None else int(pole_order)
    out = []
    for t, e in enumerate(profile.multiplicities):
        if e < 0:
            raise IncompleteProfile(f"negative multiplicity at scaled index {t}")
        out.extend([t - ell] * e)
    return tuple(out)


def profile_from_multiplicities(e, pole_order=0):
    """Profile whose ranks reproduce the given scaled multiplicities ``e_0, e_1, ...``."""
    rho = np.cumsum(e)
    ranks = tuple(int(x) for x in np.cumsum(rho))
    return ToeplitzProfile(-int(pole_order), int(rho[-1]), ranks)
