import numpy as np
import pytest

from smimc.densela import numerical_rank
from smimc.exceptions import (
    IncompleteProfile,
    InsufficientSeriesOrder,
    MaxOrderExceeded,
    ZeroFunctionError,
)
from smimc.harness import InstanceSpec, gen_instance
from smimc.polymat import LaurentMatrix
from smimc.toeplitz_oracle import (
    ToeplitzProfile,
    build_toeplitz,
    indices_from_profile,
    oracle_profile,
    profile_from_multiplicities,
)

from conftest import jordan_2x2, pole_diag, scalar_poly


def naive_toeplitz(M, k):
    """Entry-by-entry construction with explicit loops."""
    m, n = M.shape
    nb = k - M.lowest + 1
    T = np.zeros((m * nb, n * nb), dtype=complex)
    for p in range(nb):
        for q in range(nb):
            e = M.lowest + q - p
            t = e - M.lowest
            if q < p or t >= M.nterms:
                continue
            for a in range(m):
                for b in range(n):
                    T[p * m + a, q * n + b] = M.coeffs[t, a, b]
    return T


def test_single_block():
    M = pole_diag()
    assert np.array_equal(build_toeplitz(M, -1), M.coeffs[0])


def test_diag_layout():
    P = LaurentMatrix.monomial_diag([0, 1])
    T = build_toeplitz(P, 1)
    P0, P1 = np.diag([1, 0]), np.diag([0, 1])
    assert np.array_equal(T, np.block([[P0, P1], [np.zeros((2, 2)), P0]]))


def test_random_matches_naive(rng):
    M = LaurentMatrix(rng.standard_normal((4, 2, 3)) + 1j * rng.standard_normal((4, 2, 3)), lowest=-1)
    for k in (-1, 0, 2, 5):
        assert np.array_equal(build_toeplitz(M, k), naive_toeplitz(M, k))


def test_build_needs_known_coefficients():
    with pytest.raises(InsufficientSeriesOrder):
        build_toeplitz(scalar_poly([1, 2], exact=False), 3)


def test_identity_profile():
    prof = oracle_profile(LaurentMatrix.identity(2), 2)
    assert prof.ranks == (2,)
    assert prof.stop_order == 0
    assert prof.indices == (0, 0)


def test_jordan_profile_matches_naive_ranks():
    P = jordan_2x2()
    prof = oracle_profile(P, 2)
    naive = tuple(numerical_rank(naive_toeplitz(P, k)).rank for k in range(3))
    assert prof.ranks == naive == (1, 2, 4)
    assert prof.increments == (1, 1, 2)
    assert prof.multiplicities == (1, 0, 1)
    assert prof.indices == (0, 2)


def test_pole_profile():
    prof = oracle_profile(pole_diag(), 2)
    assert prof.pole_order == 1
    assert prof.indices == (-1, 1)


def test_lowest_above_zero_is_padded():
    prof = oracle_profile(LaurentMatrix.identity(2).shift_power(2), 2)
    assert prof.indices == (2, 2)


def test_zero_input():
    with pytest.raises(ZeroFunctionError):
        oracle_profile(LaurentMatrix.zeros(2, 2))


def test_truncated_input_runs_out():
    with pytest.raises(InsufficientSeriesOrder):
        oracle_profile(jordan_2x2().truncate(1), 2)


def test_wrong_rank_hits_cap():
    with pytest.raises(MaxOrderExceeded):
        oracle_profile(LaurentMatrix.monomial_diag([0, 1], shape=(3, 3)), 3)


def test_indices_from_multiplicities():
    assert indices_from_profile(profile_from_multiplicities([1, 1, 0, 1])) == (0, 1, 3)
    assert indices_from_profile(profile_from_multiplicities([1, 0, 1], pole_order=1)) == (-1, 1)
    assert indices_from_profile(profile_from_multiplicities([3])) == (0, 0, 0)


def test_incomplete_profile():
    prof = ToeplitzProfile(0, 2, (1,), complete=False)
    with pytest.raises(IncompleteProfile):
        indices_from_profile(prof)


def test_multiplicity_formula():
    prof = profile_from_multiplicities([1, 1, 0, 1])
    r = (0, 0) + prof.ranks
    e = tuple(r[i + 2] - 2 * r[i + 1] + r[i] for i in range(len(prof.ranks)))
    assert e == prof.multiplicities == (1, 1, 0, 1)


@pytest.mark.parametrize("seed", range(5))
def test_planted_indices(seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(2, 6, 2)
    r = int(rng.integers(1, min(m, n) + 1))
    exps = tuple(sorted(rng.integers(0, 4, r)))
    P, truth = gen_instance(InstanceSpec(int(m), int(n), exps, degree=2, seed=seed))
    prof = oracle_profile(P, r)
    assert prof.indices == truth
    assert all(b >= a for a, b in zip(prof.increments, prof.increments[1:]))
