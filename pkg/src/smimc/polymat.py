"""Polynomial and Laurent matrix values stored as coefficient stacks.

A :class:`LaurentMatrix` holds ``coeffs[t]``, the coefficient of
``(lam - point) ** (lowest + t)``.  Exact values are complete (all omitted
coefficients are zero); inexact values are truncated series whose known
window ends at :attr:`LaurentMatrix.highest`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .densela import as_complex_matrix
from .exceptions import (
    DimensionMismatch,
    EvalAtPole,
    InsufficientSeriesOrder,
    NegativeShiftOnNonzeroEntry,
    NonFiniteInput,
    PointMismatch,
)


def _as_stack(coeffs):
    arr = np.array(coeffs, dtype=complex)
    if arr.ndim == 2:
        arr = arr[None]
    if arr.ndim != 3:
        raise ValueError(f"coefficient stack must be 3-D (K, m, n), got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError("coefficient stack must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput("coefficients contain NaN or Inf")
    return arr


@dataclass(frozen=True, eq=False)
class LaurentMatrix:
    """Matrix function given by its expansion about ``point``."""

    coeffs: np.ndarray
    point: complex = 0j
    lowest: int = 0
    exact: bool = True

    def __post_init__(self):
        arr = _as_stack(self.coeffs)
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "point", complex(self.point))
        object.__setattr__(self, "lowest", int(self.lowest))
        object.__setattr__(self, "exact", bool(self.exact))

    # -- construction helpers -------------------------------------------
    @classmethod
    def constant(cls, A, point=0j):
        return cls(as_complex_matrix(A)[None], point=point)

    @classmethod
    def identity(cls, n, point=0j):
        return cls(np.eye(n, dtype=complex)[None], point=point)

    @classmethod
    def zeros(cls, m, n, point=0j):
        return cls(np.zeros((1, m, n), dtype=complex), point=point)

    @classmethod
    def monomial_diag(cls, exponents, point=0j, shape=None):
        """``diag((lam - point) ** e)`` padded with zeros to ``shape``."""
        exps = [int(e) for e in exponents]
        m, n = shape if shape is not None else (len(exps), len(exps))
        if not exps:
            return cls.zeros(m, n, point)
        lo, hi = min(exps), max(exps)
        C = np.zeros((hi - lo + 1, m, n), dtype=complex)
        for j, e in enumerate(exps):
            C[e - lo, j, j] = 1.0
        return cls(C, point=point, lowest=lo)

    # -- shape and window -----------------------------------------------
    @property
    def shape(self):
        return self.coeffs.shape[1:]

    @property
    def rows(self):
        return self.coeffs.shape[1]

    @property
    def cols(self):
        return self.coeffs.shape[2]

    @property
    def nterms(self):
        return self.coeffs.shape[0]

    @property
    def highest(self):
        """Exponent of the last stored coefficient."""
        return self.lowest + self.nterms - 1

    @property
    def valid_order(self):
        """Last exponent known for an inexact series, ``None`` when exact."""
        return None if self.exact else self.highest

    @property
    def pole_order(self):
        return max(0, -self.lowest)

    @property
    def degree(self):
        """Degree of an exact polynomial value (trailing zero blocks ignored)."""
        nz = np.flatnonzero(np.any(self.coeffs != 0, axis=(1, 2)))
        return self.lowest + int(nz[-1]) if nz.size else 0

    @property
    def is_polynomial(self):
        return self.exact and self.lowest >= 0

    def coeff(self, k):
        """Coefficient of ``(lam - point) ** k``."""
        t = k - self.lowest
        if 0 <= t < self.nterms:
            return self.coeffs[t]
        if t >= self.nterms and not self.exact:
            raise InsufficientSeriesOrder(
                f"coefficient of order {k} requested, series known only through {self.highest}"
            )
        return np.zeros(self.shape, dtype=complex)

    def window(self, lo, hi):
        """Stack of coefficients for exponents ``lo..hi`` inclusive."""
        return np.stack([self.coeff(k) for k in range(lo, hi + 1)])

    # -- cheap structural operations -------------------------------------
    def truncate(self, order):
        """Inexact copy that keeps exponents up to ``order``."""
        if order < self.lowest:
            raise InsufficientSeriesOrder(f"cannot truncate below the lowest exponent {self.lowest}")
        return LaurentMatrix(self.window(self.lowest, order), self.point, self.lowest, exact=False)

    def with_lowest(self, k):
        """Same function with the stack starting at exponent ``k <= lowest`` (zero padded)."""
        pad = self.lowest - int(k)
        if pad < 0:
            raise ValueError(f"cannot start above the lowest stored exponent {self.lowest}")
        if pad == 0:
            return self
        C = np.concatenate([np.zeros((pad,) + self.shape, dtype=complex), self.coeffs])
        return LaurentMatrix(C, self.point, int(k), self.exact)

    def shift_power(self, s):
        """Multiply by ``(lam - point) ** s``."""
        return LaurentMatrix(self.coeffs, self.point, self.lowest + int(s), self.exact)

    def columns(self, idx):
        return LaurentMatrix(self.coeffs[:, :, idx], self.point, self.lowest, self.exact)

    @property
    def T(self):
        return LaurentMatrix(self.coeffs.transpose(0, 2, 1), self.point, self.lowest, self.exact)

    def __matmul__(self, other):
        return mul(self, other)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, other, alpha=-1.0)

    def __neg__(self):
        return LaurentMatrix(-self.coeffs, self.point, self.lowest, self.exact)

    def __call__(self, lam):
        return evaluate(self, lam)

    def __repr__(self):
        kind = "exact" if self.exact else f"valid through {self.highest}"
        return (
            f"LaurentMatrix({self.rows}x{self.cols}, point={self.point}, "
            f"exponents {self.lowest}..{self.highest}, {kind})"
        )


@dataclass(frozen=True)
class ZeroFunction:
    """Marker for an identically zero matrix function."""

    rows: int
    cols: int
    point: complex = 0j

    @property
    def shape(self):
        return (self.rows, self.cols)


PolyMatrix = LaurentMatrix  # an exact LaurentMatrix with lowest >= 0


def evaluate(M, lam):
    """Value of ``M`` at ``lam`` by Horner's rule in ``lam - point``."""
    x = complex(lam) - M.point
    if x == 0 and M.lowest < 0:
        raise EvalAtPole(f"cannot evaluate at the pole {M.point}")
    acc = np.zeros(M.shape, dtype=complex)
    for C in M.coeffs[::-1]:
        acc = acc * x + C
    if M.lowest:
        acc = acc * x**M.lowest
    return acc


def reexpand(P, point):
    """Taylor shift of an exact polynomial matrix to a new expansion point.

    ``P`` is taken as given about ``P.point`` (monomial basis when that is 0).
    """
    if not P.exact:
        raise ValueError("reexpand requires an exact polynomial value")
    if P.lowest < 0:
        raise ValueError("reexpand requires a polynomial value (lowest >= 0)")
    point = complex(point)
    a = np.concatenate([np.zeros((P.lowest,) + P.shape, dtype=complex), P.coeffs])
    h = point - P.point
    if h != 0:
        d = a.shape[0] - 1
        # repeated synthetic division by (lam - h)
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                a[j] = a[j] + h * a[j + 1]
    return LaurentMatrix(a, point=point)


def _check_same_point(A, B):
    if A.point != B.point:
        raise PointMismatch(f"expansion points differ: {A.point} vs {B.point}")


def mul(A, B):
    """Cauchy product of two coefficient stacks.

    If either factor is inexact the product keeps only the provably known
    window and is marked inexact.
    """
    _check_same_point(A, B)
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    K = A.nterms + B.nterms - 1
    out = np.zeros((K, A.rows, B.cols), dtype=complex)
    for t in range(A.nterms):
        out[t : t + B.nterms] += A.coeffs[t] @ B.coeffs
    lowest = A.lowest + B.lowest
    exact = A.exact and B.exact
    if not exact:
        hi = np.inf
        if not A.exact:
            hi = min(hi, A.highest + B.lowest)
        if not B.exact:
            hi = min(hi, B.highest + A.lowest)
        out = out[: int(hi) - lowest + 1]
    return LaurentMatrix(out, A.point, lowest, exact)


def add(A, B, alpha=1.0):
    """``A + alpha * B`` aligned on exponents; the window is the common known one."""
    _check_same_point(A, B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"cannot add {A.shape} and {B.shape}")
    lo = min(A.lowest, B.lowest)
    hi = max(A.highest, B.highest)
    if not A.exact:
        hi = min(hi, A.highest)
    if not B.exact:
        hi = min(hi, B.highest)
    if hi < lo:
        raise InsufficientSeriesOrder("no common known window for the sum")
    out = A.window(lo, hi) + alpha * B.window(lo, hi)
    return LaurentMatrix(out, A.point, lo, A.exact and B.exact)


def monomial_scale(M, row_exp, col_exp, allow_negative=False):
    """Scale entry ``(j, k)`` by ``(lam - point) ** (col_exp[k] - row_exp[j])``.

    This is the conjugation ``D(row)^-1 M D(col)`` with ``D`` monomial diagonal.
    """
    row_exp = np.asarray(row_exp, dtype=int)
    col_exp = np.asarray(col_exp, dtype=int)
    if row_exp.shape != (M.rows,) or col_exp.shape != (M.cols,):
        raise DimensionMismatch("exponent lists must match the matrix dimensions")
    S = col_exp[None, :] - row_exp[:, None]
    nonzero = np.any(M.coeffs != 0, axis=0)
    if not allow_negative and np.any((S < 0) & nonzero):
        raise NegativeShiftOnNonzeroEntry("monomial scaling would divide a nonzero entry")
    active = S[nonzero] if np.any(nonzero) else np.zeros(1, dtype=int)
    smin, smax = int(active.min()), int(active.max())
    K = M.nterms
    out = np.zeros((K + smax - smin, M.rows, M.cols), dtype=complex)
    for j, k in zip(*np.nonzero(nonzero)):
        off = S[j, k] - smin
        out[off : off + K, j, k] = M.coeffs[:, j, k]
    if not M.exact:
        # entry (j, k) is known through highest + S[j, k]; keep the common part
        out = out[:K]
    return LaurentMatrix(out, M.point, M.lowest + smin, M.exact)


def frob_norm(M):
    """Frobenius norm of the concatenated coefficient blocks."""
    if isinstance(M, ZeroFunction):
        return 0.0
    return float(np.linalg.norm(M.coeffs))


def trim_leading(M, tol=0.0):
    """Drop leading (and, for exact values, trailing) coefficient blocks.

    Only blocks with every entry of modulus ``<= tol`` are dropped; the
    default removes exact zeros only.  Returns :class:`ZeroFunction` for an
    identically zero exact value.
    """
    if isinstance(M, ZeroFunction):
        return M
    keep = np.flatnonzero(np.max(np.abs(M.coeffs), axis=(1, 2)) > tol)
    if keep.size == 0:
        if M.exact:
            return ZeroFunction(M.rows, M.cols, M.point)
        raise InsufficientSeriesOrder(
            f"no nonzero coefficient within the known window (through order {M.highest})"
        )
    first = int(keep[0])
    last = int(keep[-1]) if M.exact else M.nterms - 1
    if first == 0 and last == M.nterms - 1:
        return M
    return LaurentMatrix(M.coeffs[first : last + 1], M.point, M.lowest + first, M.exact)
