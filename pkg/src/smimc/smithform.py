"""Compact local Smith-McMillan decomposition assembled from a rank search.

The decomposition of ``R`` at ``point`` satisfies

    R(lam) Nr(lam) = Mr_hat(lam) diag((lam - point) ** sigma)

with ``Nr`` the leading ``r`` columns of a unimodular ``N_full`` and
``Mr_hat(point)`` of full column rank.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import ranksearch
from .densela import numerical_rank
from .exceptions import NoZeroAtPoint, NegativeShiftOnNonzeroEntry
from .polymat import LaurentMatrix, ZeroFunction, evaluate, frob_norm, monomial_scale, reexpand, trim_leading


@dataclass(frozen=True, eq=False)
class CompactDecomposition:
    point: complex
    normal_rank: int
    pole_order: int
    indices: tuple  # sigma, nondecreasing
    Nr: LaurentMatrix | None
    Mr_hat: LaurentMatrix | None
    N_full: LaurentMatrix | None = None
    rho: tuple = ()
    permutation: tuple = ()  # column of Nr that carries indices[i]
    shape: tuple = (0, 0)
    diagnostics: dict = field(default_factory=dict)
    trace: ranksearch.RankSearchTrace | None = None

    @property
    def is_empty(self):
        return self.normal_rank == 0

    @property
    def multiplicities(self):
        """``{sigma: count}`` for the indices present."""
        return dict(sorted(Counter(self.indices).items()))

    @property
    def stop_order(self):
        """Largest scaled index ``d'`` (``-1`` for an empty decomposition)."""
        return len(self.rho) - 1

    @property
    def lambda_exponents(self):
        return self.indices

    def lambda_matrix(self):
        """``diag((lam - point) ** sigma)`` as an ``r x r`` Laurent matrix."""
        return LaurentMatrix.monomial_diag(self.indices, self.point)


@dataclass(frozen=True, eq=False)
class LeftCompactDecomposition:
    """``Ml(lam) R(lam) = diag((lam - point) ** sigma) Nl_hat(lam)``."""

    point: complex
    normal_rank: int
    indices: tuple
    Ml: LaurentMatrix | None
    Nl_hat: LaurentMatrix | None
    right: CompactDecomposition  # decomposition of the transpose


def _prepare(M, point):
    """Trim, move to ``point`` when needed and scale out the pole."""
    if point is not None and complex(point) != M.point:
        if not (M.exact and M.lowest >= 0):
            raise ValueError("only exact polynomial input can be re-expanded about a new point")
        M = reexpand(M, point)
    T = trim_leading(M)
    if isinstance(T, ZeroFunction):
        return T, 0, None
    ell = T.pole_order
    base = T.with_lowest(min(T.lowest, 0))
    scaled = base.shift_power(ell)
    return base, ell, scaled


def empty_decomposition(M):
    m, n = M.shape
    return CompactDecomposition(
        point=M.point,
        normal_rank=0,
        pole_order=0,
        indices=(),
        Nr=None,
        Mr_hat=None,
        N_full=LaurentMatrix.identity(n, M.point),
        shape=(m, n),
        diagnostics={"res_rel": 0.0, "norm_P": 0.0, "norm_N": float(np.sqrt(n))},
    )


def decompose(
    M,
    point=None,
    normal_rank="auto",
    tol_rel=None,
    tol_abs=0.0,
    max_order=None,
    emit_full_N=True,
    scale="global",
    trials=5,
    seed=0,
    cap_rank=False,
):
    """Compact local Smith-McMillan form of ``M`` at ``point`` (default ``M.point``).

    ``normal_rank="auto"`` estimates the rank from ``trials`` random samples
    seeded by ``seed``.  ``tol_rel``, ``tol_abs``, ``max_order``, ``scale`` and
    ``cap_rank`` are passed to :func:`smimc.ranksearch.search`.  An
    identically zero input gives an empty decomposition with ``normal_rank == 0``.
    """
    base, ell, scaled = _prepare(M, point)
    if isinstance(base, ZeroFunction):
        zero = LaurentMatrix.zeros(base.rows, base.cols, base.point)
        return empty_decomposition(zero)
    if normal_rank in (None, "auto"):
        r = ranksearch.estimate_normal_rank(scaled, trials=trials, seed=seed)
    else:
        r = int(normal_rank)
    if r == 0:
        return empty_decomposition(base)

    trace = ranksearch.search(
        scaled, r, tol_rel=tol_rel, tol_abs=tol_abs, max_order=max_order, scale=scale, pole_order=ell,
        cap_rank=cap_rank,
    )
    N = assemble_unimodular(trace)
    Nr = N.columns(slice(0, r))
    Mr_hat = trace.final.columns(slice(0, r))
    sigma = tuple(int(c) - ell for c in trace.col_shifts[:r])
    dec = CompactDecomposition(
        point=base.point,
        normal_rank=r,
        pole_order=ell,
        indices=sigma,
        Nr=Nr,
        Mr_hat=Mr_hat,
        N_full=N if emit_full_N else None,
        rho=trace.rho,
        permutation=tuple(range(r)),
        shape=base.shape,
        trace=trace,
        diagnostics={"norm_N": frob_norm(N)},
    )
    dec.diagnostics.update(residual_report(base, dec))
    return dec


def decompose_left(M, **kwargs):
    """Left-sided compact form, computed from the right form of the transpose."""
    right = decompose(M.T if not isinstance(M, ZeroFunction) else M, **kwargs)
    return LeftCompactDecomposition(
        point=right.point,
        normal_rank=right.normal_rank,
        indices=right.indices,
        Ml=right.Nr.T if right.Nr is not None else None,
        Nl_hat=right.Mr_hat.T if right.Mr_hat is not None else None,
        right=right,
    )


def assemble_unimodular(trace):
    """Accumulate ``N(lam)`` from the recorded constant transformations.

    Step ``i`` contributes ``D^-1 N_i D`` with ``D = diag((lam - point) ** c)``
    for the column shifts ``c`` in force before the step, so that
    ``P(lam) N(lam) = P_final(lam) D_final``.
    """
    n = len(trace.col_shifts)
    U = LaurentMatrix.identity(n, trace.point)
    c = np.zeros(n, dtype=int)
    for step in trace.steps:
        Ni = LaurentMatrix.constant(step.transform(), trace.point)
        U = U @ monomial_scale(Ni, c, c)
        c[step.rank :] += 1
    c[trace.steps[-1].rank :] -= 1  # the last step does not divide
    if not np.array_equal(c, trace.col_shifts):
        raise NegativeShiftOnNonzeroEntry("column shifts disagree with the trace")
    return trim_leading(U)


def residual_report(M, D):
    """Relative Frobenius norm of ``M Nr - Mr_hat diag(lam^sigma)`` on the known window."""
    if D.is_empty:
        return {"res_rel": 0.0, "norm_P": frob_norm(M), "norm_N": D.diagnostics.get("norm_N", 0.0)}
    res = residual(M, D)
    norm_P = frob_norm(M)
    norm_N = frob_norm(D.N_full) if D.N_full is not None else D.diagnostics.get("norm_N", float("nan"))
    return {
        "res_rel": frob_norm(res) / norm_P if norm_P else 0.0,
        "norm_P": norm_P,
        "norm_N": norm_N,
        "res_window": (res.lowest, res.highest),
    }


def residual(M, D):
    """``M Nr - Mr_hat Lambda`` as a Laurent matrix (truncated if any factor is)."""
    return M @ D.Nr - D.Mr_hat @ D.lambda_matrix()


def unimodularity_spread(N, samples=10, seed=0):
    """Relative spread of ``det N(lam)`` over random sample points."""
    rng = np.random.default_rng(seed)
    pts = N.point + rng.uniform(0.5, 2.0, samples) * np.exp(2j * np.pi * rng.uniform(size=samples))
    dets = np.array([np.linalg.det(evaluate(N, p)) for p in pts])
    ref = np.abs(dets).max()
    if ref == 0:
        return np.inf
    return float(np.abs(dets - dets.mean()).max() / ref)


def certificates(M, D, samples=10, seed=0):
    """Rank and unimodularity checks of a decomposition; values, not verdicts."""
    out = {"indices_sorted": list(D.indices) == sorted(D.indices)}
    if D.is_empty:
        return out
    r = D.normal_rank
    out["rank_Mr_hat_at_point"] = numerical_rank(D.Mr_hat.coeff(0)).rank
    out["normal_rank"] = r
    if D.N_full is not None:
        n = D.N_full.rows
        out["rank_N_at_point"] = numerical_rank(D.N_full.coeff(0)).rank
        out["n"] = n
        out["det_spread"] = unimodularity_spread(D.N_full, samples, seed)
    return out


@dataclass(frozen=True)
class RootVector:
    order: int  # sigma_i >= 1
    column: int
    x: LaurentMatrix  # n x 1 polynomial
    v: LaurentMatrix  # m x 1, truncated for rational input


@dataclass(frozen=True)
class RootVectorSet:
    threshold: int  # 0-based column of the first index >= 1
    vectors: tuple
    report: dict

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


def extract_root_vectors(D, M=None):
    """Root polynomials ``x_i`` and root vectors ``v_i`` for every index ``>= 1``.

    The two full column rank conditions are checked and attached as
    ``report``; with ``M`` given, the root-vector residuals are included.
    """
    sig = D.indices
    pos = [i for i, s in enumerate(sig) if s >= 1]
    if not pos:
        raise NoZeroAtPoint(f"no positive structural index at {D.point}")
    j = pos[0]
    vecs = tuple(
        RootVector(sig[i], D.permutation[i], D.Nr.columns([D.permutation[i]]), D.Mr_hat.columns([D.permutation[i]]))
        for i in pos
    )
    X0 = np.column_stack([rv.x.coeff(0)[:, 0] for rv in vecs])
    V0 = np.column_stack([rv.v.coeff(0)[:, 0] for rv in vecs])
    if D.N_full is not None:
        X0 = np.column_stack([D.N_full.coeff(0)[:, D.normal_rank :], X0])
    report = {
        "x_rank": numerical_rank(X0).rank,
        "x_cols": X0.shape[1],
        "v_rank": numerical_rank(V0).rank,
        "v_cols": V0.shape[1],
    }
    report["x_full_rank"] = report["x_rank"] == report["x_cols"]
    report["v_full_rank"] = report["v_rank"] == report["v_cols"]
    if M is not None:
        report["residuals"] = [root_vector_residual(M, rv) for rv in vecs]
        if M.lowest >= 0 and D.N_full is not None:
            # kernel of M(point) is spanned by the checked columns
            report["kernel_dim"] = M.cols - numerical_rank(M.coeff(0)).rank
    return RootVectorSet(j, vecs, report)


def root_vector_residual(M, rv):
    """``||M x - v (lam - point)^sigma|| / (||M|| ||x||)`` on the known window."""
    res = M @ rv.x - rv.v.shift_power(rv.order)
    den = frob_norm(M) * frob_norm(rv.x)
    return frob_norm(res) / den if den else 0.0
