import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from smimc.estimator import LocalSmithForm, check_series
from smimc.harness import InstanceSpec, gen_instance
from smimc.polymat import LaurentMatrix

from conftest import jordan_2x2


def test_params_roundtrip():
    est = LocalSmithForm(point=1j, normal_rank=2, tol_rel=1e-10)
    params = est.get_params()
    assert params["point"] == 1j and params["normal_rank"] == 2 and params["scale"] == "global"
    twin = clone(est)
    assert twin.get_params() == params
    assert est.set_params(scale="local").scale == "local"


def test_fit_sets_attributes():
    est = LocalSmithForm().fit(jordan_2x2())
    assert est.indices_ == (0, 2)
    assert est.normal_rank_ == 2
    assert est.stop_order_ == 2
    assert est.rho_ == (1, 1, 2)
    assert est.Nr_.shape == (2, 2) and est.N_.shape == (2, 2)
    assert est.residual() <= 1e-15
    assert est.certificates()["rank_N_at_point"] == 2
    assert [rv.order for rv in est.root_vectors()] == [2]


def test_fit_accepts_arrays():
    stack = jordan_2x2().coeffs.copy()
    assert LocalSmithForm().fit(stack).indices_ == (0, 2)
    assert LocalSmithForm().fit(np.eye(3)).indices_ == (0, 0, 0)


def test_check_series():
    M = LaurentMatrix.identity(2)
    assert check_series(M) is M
    with pytest.raises(ValueError):
        check_series(np.zeros((1, 1, 1, 1)))
    with pytest.raises(ValueError):
        check_series(np.array([[np.nan]]))


def test_invalid_params():
    with pytest.raises(ValueError):
        LocalSmithForm(scale="median").fit(np.eye(2))
    with pytest.raises(ValueError):
        LocalSmithForm(tol_abs=-1).fit(np.eye(2))


def test_not_fitted():
    with pytest.raises(NotFittedError):
        LocalSmithForm().residual()


def test_matches_planted():
    P, truth = gen_instance(InstanceSpec(4, 5, (0, 1, 3), degree=2, seed=8))
    assert LocalSmithForm(cap_rank=True).fit(P).indices_ == truth
