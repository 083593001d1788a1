import json

import numpy as np
import pytest

from smimc.exceptions import ParseError
from smimc.harness import InstanceSpec, gen_instance
from smimc.io import (
    decomposition_from_dict,
    decomposition_to_dict,
    format_complex,
    parse_complex,
    read_decomposition,
    read_series,
    series_from_dict,
    series_to_dict,
    write_decomposition,
    write_series,
)
from smimc.polymat import LaurentMatrix
from smimc.smithform import decompose

from conftest import pole_diag


@pytest.mark.parametrize(
    "text, value",
    [("0", 0j), ("1+2i", 1 + 2j), ("-0.5-3i", -0.5 - 3j), ("i", 1j), ("2-i", 2 - 1j), (" 1e-3 + 4j ", 1e-3 + 4j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1+2k"])
def test_parse_complex_errors(text):
    with pytest.raises(ParseError):
        parse_complex(text)


def test_format_roundtrip():
    z = 0.1 - 1e-300j
    assert parse_complex(format_complex(z)) == z


def test_series_roundtrip_bitwise(tmp_path, rng):
    M = LaurentMatrix(rng.standard_normal((3, 2, 4)) / 3 + 1j * rng.standard_normal((3, 2, 4)), 0.3 - 1j, -1, False)
    write_series(M, tmp_path / "m.json")
    back = read_series(tmp_path / "m.json")
    assert np.array_equal(back.coeffs, M.coeffs)
    assert (back.point, back.lowest, back.exact) == (M.point, M.lowest, M.exact)


def test_monomial_basis_is_reexpanded():
    obj = series_to_dict(LaurentMatrix(np.array([[[0.0]], [[0.0]], [[1.0]]])), basis="monomial")
    obj["point"] = {"re": 2.0, "im": 0.0}
    M = series_from_dict(obj)
    assert M.point == 2
    assert np.allclose(M.coeffs.ravel(), [4, 4, 1])


def test_monomial_basis_requires_polynomial():
    obj = series_to_dict(pole_diag(), basis="monomial")
    with pytest.raises(ParseError):
        series_from_dict(obj)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda o: o.pop("rows"),
        lambda o: o.update(coeffs=[]),
        lambda o: o.update(basis="chebyshev"),
        lambda o: o["coeffs"][0].update(re=[[1.0]]),
    ],
)
def test_malformed_series(mutate):
    obj = series_to_dict(LaurentMatrix.identity(2))
    mutate(obj)
    with pytest.raises(ParseError):
        series_from_dict(obj)


def test_invalid_json(tmp_path):
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(ParseError):
        read_series(tmp_path / "bad.json")


def test_decomposition_roundtrip(tmp_path):
    P, _ = gen_instance(InstanceSpec(4, 5, (0, 1, 3), degree=2, seed=1, complex=True))
    D = decompose(P)
    write_decomposition(D, tmp_path / "d.json")
    back = read_decomposition(tmp_path / "d.json")
    assert back.indices == D.indices and back.rho == D.rho and back.normal_rank == D.normal_rank
    assert back.pole_order == D.pole_order and back.point == D.point and back.shape == D.shape
    for a, b in ((back.Nr, D.Nr), (back.Mr_hat, D.Mr_hat), (back.N_full, D.N_full)):
        assert np.array_equal(a.coeffs, b.coeffs)
    assert back.diagnostics["res_rel"] == D.diagnostics["res_rel"]
    assert json.loads((tmp_path / "d.json").read_text())["e"] == [[0, 1], [1, 1], [3, 1]]
    # a second write is byte identical
    write_decomposition(back, tmp_path / "d2.json")
    assert (tmp_path / "d.json").read_bytes() == (tmp_path / "d2.json").read_bytes()


def test_decomposition_without_full_N():
    D = decompose(pole_diag())
    obj = decomposition_to_dict(D, include_full_N=False)
    assert obj["N_full"] is None
    assert decomposition_from_dict(obj).N_full is None


def test_empty_decomposition_roundtrip():
    D = decompose(LaurentMatrix.zeros(2, 2))
    back = decomposition_from_dict(decomposition_to_dict(D))
    assert back.is_empty and back.Nr is None


def test_wrong_format_tag():
    with pytest.raises(ParseError):
        decomposition_from_dict({"format": "something-else"})
