"""scikit-learn style facade over :func:`smimc.smithform.decompose`."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .densela import as_complex_matrix
from .polymat import LaurentMatrix
from .ranksearch import SCALES
from .smithform import certificates, decompose, extract_root_vectors, residual_report


def check_series(M, point=0j, lowest=0, exact=True):
    """Return ``M`` as a :class:`LaurentMatrix`.

    Accepts a LaurentMatrix unchanged, a ``(K, m, n)`` coefficient stack or a
    single ``(m, n)`` matrix (taken as a constant).
    """
    if isinstance(M, LaurentMatrix):
        return M
    A = np.asarray(M)
    if A.ndim == 2:
        return LaurentMatrix.constant(as_complex_matrix(A, "M"), point)
    if A.ndim != 3:
        raise ValueError(f"expected a (K, m, n) coefficient stack, got shape {A.shape}")
    return LaurentMatrix(A, point=point, lowest=lowest, exact=exact)


class LocalSmithForm(BaseEstimator):
    """Compact local Smith-McMillan form at ``point``.

    Parameters mirror :func:`smimc.smithform.decompose`.  After ``fit`` the
    attributes ``indices_``, ``normal_rank_``, ``pole_order_``, ``Nr_``,
    ``Mr_hat_``, ``N_``, ``rho_``, ``stop_order_`` and ``decomposition_`` are set.
    """

    def __init__(
        self,
        point=None,
        normal_rank="auto",
        tol_rel=None,
        tol_abs=0.0,
        max_order=None,
        scale="global",
        cap_rank=False,
        trials=5,
        seed=0,
    ):
        self.point = point
        self.normal_rank = normal_rank
        self.tol_rel = tol_rel
        self.tol_abs = tol_abs
        self.max_order = max_order
        self.scale = scale
        self.cap_rank = cap_rank
        self.trials = trials
        self.seed = seed

    def _validate_params(self):
        if self.scale not in SCALES:
            raise ValueError(f"scale must be one of {SCALES}, got {self.scale!r}")
        if self.normal_rank not in (None, "auto") and int(self.normal_rank) < 0:
            raise ValueError("normal_rank must be 'auto' or a nonnegative integer")
        if self.tol_rel is not None and self.tol_rel < 0 or self.tol_abs < 0:
            raise ValueError("tolerances must be nonnegative")

    def fit(self, M, y=None):
        self._validate_params()
        M = check_series(M, point=0j if self.point is None else self.point)
        D = decompose(
            M,
            point=self.point,
            normal_rank=self.normal_rank,
            tol_rel=self.tol_rel,
            tol_abs=self.tol_abs,
            max_order=self.max_order,
            scale=self.scale,
            trials=self.trials,
            seed=self.seed,
            cap_rank=self.cap_rank,
        )
        self.series_ = M
        self.decomposition_ = D
        self.indices_ = D.indices
        self.normal_rank_ = D.normal_rank
        self.pole_order_ = D.pole_order
        self.Nr_ = D.Nr
        self.Mr_hat_ = D.Mr_hat
        self.N_ = D.N_full
        self.rho_ = D.rho
        self.stop_order_ = D.stop_order
        return self

    def _check_fitted(self):
        if not hasattr(self, "decomposition_"):
            raise NotFittedError("call fit before using this LocalSmithForm")

    def residual(self):
        self._check_fitted()
        return residual_report(self.series_.with_lowest(min(self.series_.lowest, 0)), self.decomposition_)["res_rel"]

    def certificates(self, samples=10):
        self._check_fitted()
        return certificates(self.series_, self.decomposition_, samples=samples, seed=self.seed)

    def root_vectors(self):
        self._check_fitted()
        return extract_root_vectors(self.decomposition_, self.series_)
