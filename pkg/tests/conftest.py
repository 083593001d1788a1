import numpy as np
import pytest

from smimc import LaurentMatrix


def scalar_poly(coeffs, point=0j, lowest=0, exact=True):
    """1x1 Laurent matrix from a list of scalar coefficients."""
    return LaurentMatrix(np.array(coeffs, dtype=complex).reshape(-1, 1, 1), point, lowest, exact)


def jordan_2x2():
    """[[lam, 1], [0, lam]] about 0."""
    c = np.zeros((2, 2, 2), dtype=complex)
    c[0, 0, 1] = 1
    c[1, 0, 0] = c[1, 1, 1] = 1
    return LaurentMatrix(c)


def pole_diag():
    """diag(lam^-1, lam) about 0."""
    c = np.zeros((3, 2, 2), dtype=complex)
    c[0, 0, 0] = 1
    c[2, 1, 1] = 1
    return LaurentMatrix(c, lowest=-1)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
