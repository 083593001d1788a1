import numpy as np
import pytest

from smimc.exceptions import DegenerateDraw
from smimc.harness import (
    InstanceSpec,
    format_table,
    gen_instance,
    random_instances,
    run_table1,
    run_table2,
    table1_specs,
    table2_specs,
)
from smimc.polymat import LaurentMatrix


def test_spec_validation():
    with pytest.raises(ValueError):
        InstanceSpec(2, 2, (0, 1, 2))
    with pytest.raises(ValueError):
        InstanceSpec(3, 3, (2, 1))
    with pytest.raises(ValueError):
        InstanceSpec(3, 3, (-1,))
    assert InstanceSpec(4, 5, (0, 1, 3)).r == 3


def test_table1_instance_degree():
    # degree 2 + 3 + 2 for the transforms and the planted diagonal
    P, truth = gen_instance(table1_specs(0)[0][1])
    assert P.shape == (4, 5)
    assert truth == (0, 1, 3)
    assert P.degree == 7


@pytest.mark.parametrize("k", [1, 5, 10])
def test_table2_instance_degree(k):
    P, truth = gen_instance(table2_specs(0)[k - 1][1])
    assert P.degree == 22 + k
    assert truth == (0, k + 1, k + 2)


def test_identity_transforms():
    P, truth = gen_instance(InstanceSpec(3, 4, (0, 2), degree=0, identity_transforms=True))
    expect = LaurentMatrix.monomial_diag((0, 2), shape=(3, 4))
    assert np.array_equal(P.coeffs, expect.coeffs)
    assert truth == (0, 2)


def test_deterministic_draw():
    spec = InstanceSpec(3, 3, (0, 1), degree=2, power=3, seed=42, complex=True)
    a, _ = gen_instance(spec)
    b, _ = gen_instance(spec)
    assert np.array_equal(a.coeffs, b.coeffs)
    assert np.iscomplexobj(a.coeffs) and np.any(a.coeffs.imag != 0)


def test_real_by_default():
    P, _ = gen_instance(InstanceSpec(3, 3, (0, 1), seed=1))
    assert np.all(P.coeffs.imag == 0)


def test_degenerate_draw():
    # g**200 spreads constant transforms over hundreds of decades, so every
    # draw is numerically singular at the point
    with pytest.raises(DegenerateDraw):
        gen_instance(InstanceSpec(2, 2, (0,), degree=0, power=200, seed=0))


def test_tables_bitwise_deterministic():
    a = run_table1(seed=3)
    b = run_table1(seed=3, jobs=4)
    for x, y in zip(a, b):
        assert (x.label, x.norm_P, x.res_rel, x.norm_N, x.indices) == (y.label, y.norm_P, y.res_rel, y.norm_N, y.indices)


def test_table2_rows():
    rows = run_table2(seed=0)
    assert [r.label for r in rows] == list(range(1, 11))
    assert all(r.indices_ok for r in rows)
    text = format_table(rows, "k")
    assert text.splitlines()[0].split()[:2] == ["k", "||P||"]
    assert len(text.splitlines()) == 11


def test_random_instances_with_poles():
    items = list(random_instances(30, seed=5))
    assert len(items) == 30
    assert any(min(t) < 0 for _, t in items)
    again = list(random_instances(30, seed=5))
    assert all(np.array_equal(a[0].coeffs, b[0].coeffs) for a, b in zip(items, again))
