from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from catdim.algebra import (Arrow, InfiniteDimensional, Quiver, cached_enveloping, dynkin_type,
                            is_semisimple, loewy_length, opposite, path_algebra, radical_series,
                            semisimple_algebra, tensor_product)
from catdim.catalog import EXPECTED_DYNKIN, B, dual_numbers, dynkin_quivers, graded_kronecker, xyz
from catdim.linalg import GF


def test_linear_quiver_dimensions():
    assert B(2).dim == 3
    assert B(3).dim == 6
    assert B(4).dim == 10


def test_xyz_dimension_and_loewy_length():
    A = xyz()
    assert A.dim == 7
    assert loewy_length(A) == 2
    assert [len(layer) for layer in radical_series(A)] == [4, 1]


def test_path_label_convention():
    A = B(3)
    assert "a2.a1" in A.labels
    i, j = A.labels.index("a1"), A.labels.index("a2")
    assert A.mul_basis(i, j) == {A.labels.index("a2.a1"): 1}
    assert A.mul_basis(j, i) == {}


def test_relations_kill_paths():
    A = xyz()
    x, y, z = (A.labels.index(c) for c in "xyz")
    assert A.mul_basis(y, z) == {}
    assert A.mul_basis(z, x) == {}
    assert A.mul_basis(x, y)


def test_infinite_dimensional_rejected():
    q = Quiver(("0",), (Arrow("e", "0", "0"),))
    with pytest.raises(InfiniteDimensional):
        path_algebra(q)


def test_unknown_relation_arrow():
    with pytest.raises(ValueError):
        path_algebra(B(2).quiver, [("zz",)])


@pytest.mark.parametrize("A", [B(2), B(3), xyz(), dual_numbers(-1), graded_kronecker([0, 2])],
                         ids=lambda a: a.name)
def test_validate_clean(A):
    assert A.validate() == []


def test_graded_signs_in_tensor_product():
    A = dual_numbers(1)
    C = tensor_product(A, A)
    assert C.validate() == []
    e = A.labels.index("e")
    x = C.labels.index("e|e0")
    y = C.labels.index("e0|e")
    # (e(x)1)(1(x)e) = e(x)e, (1(x)e)(e(x)1) = -e(x)e for odd e
    ee = C.labels.index("e|e")
    assert C.mul_basis(x, y) == {ee: 1}
    assert C.mul_basis(y, x) == {ee: -1}
    assert e >= 0


def test_opposite_reverses_products():
    A = B(2)
    O = opposite(A)
    assert O.validate() == []
    for i in range(A.dim):
        for j in range(A.dim):
            assert O.mul_basis(j, i) == A.mul_basis(i, j)


def test_enveloping_algebra_is_valid():
    E = cached_enveloping(B(2))
    assert E.dim == 9
    assert E.associativity_failures() == []


def test_semisimple_detection():
    assert is_semisimple(semisimple_algebra(3))
    assert not is_semisimple(B(2))


def test_corrupted_structure_constant_detected():
    A = B(3)
    e1, a1 = A.labels.index("e1"), A.labels.index("a1")
    bad = A.with_structure_constant(e1, a1, a1, 2)
    assert bad.associativity_failures()
    assert bad.validate()


def test_rescaled_product_is_still_associative():
    A = B(3)
    i, j = A.labels.index("a1"), A.labels.index("a2")
    assert A.with_structure_constant(i, j, A.labels.index("a2.a1"), 2).associativity_failures() == []


def test_cartan_matrix_of_B2():
    assert B(2).cartan_matrix() == [[1, 1], [0, 1]]


@pytest.mark.parametrize("name", sorted(EXPECTED_DYNKIN))
def test_dynkin_fixtures(name):
    assert dynkin_type(dynkin_quivers()[name]) == EXPECTED_DYNKIN[name]


def test_prime_field_algebra():
    A = B(3, GF(3))
    assert A.validate() == []


@given(st.lists(st.integers(-2, 2), min_size=1, max_size=3))
def test_graded_kronecker_associative(degrees):
    A = graded_kronecker(degrees)
    assert A.validate() == []
    assert A.dim == 2 + len(degrees)


@given(st.integers(1, 4), st.integers(1, 3))
def test_tensor_dimension_multiplies(n, m):
    assert tensor_product(B(n), B(m)).dim == B(n).dim * B(m).dim
