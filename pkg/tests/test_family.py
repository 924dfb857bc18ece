from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from catdim.algebra import Arrow, Quiver, path_algebra
from catdim.catalog import B, kronecker, xyz
from catdim.family import (ModuleFamily, NotHereditary, Poly, PolyComplex, PolyMatrix,
                           family_rhom, jump_locus, poly_gcd, roots_and_factors,
                           semicontinuity_scan, specialize)
from catdim.linalg import QQ, parse_field
from catdim.serre import rhom

T = Poly.t()
small = st.integers(-4, 4)
polys = st.lists(small, min_size=0, max_size=4).map(Poly)


def times_t() -> PolyComplex:
    return PolyComplex({0: 1, 1: 1}, {0: PolyMatrix.from_lists([[T]])})


def B2_family() -> ModuleFamily:
    A = B(2)
    return ModuleFamily(A, {"1": 1, "2": 1}, {"a1": PolyMatrix.from_lists([[T]])})


# -- polynomials -------------------------------------------------------------------

@given(polys, polys)
def test_divmod_identity(a, b):
    if not b:
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert not r or r.degree < b.degree


@given(polys, polys, st.integers(-5, 5))
def test_evaluation_is_a_ring_map(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


def test_gcd_is_monic_common_factor():
    a = (T - 1) * (T - 2)
    b = (T - 2) * (T + 3)
    assert poly_gcd(a, b) == T - 2


def test_roots_and_symbolic_factors():
    roots, other = roots_and_factors((T - Fraction(1, 2)) * (T * T + 1))
    assert roots == [Fraction(1, 2)]
    assert len(other) == 1 and "t**2 + 1" in other[0]


def test_roots_over_prime_field():
    F = parse_field("p:5")
    roots, other = roots_and_factors(Poly([1, 0, 1], F))
    assert sorted(int(r) for r in roots) == [2, 3]
    assert other == []


# -- complexes -----------------------------------------------------------------------

def test_constructor_rejects_nonzero_square():
    d0 = PolyMatrix.from_lists([[1]])
    d1 = PolyMatrix.from_lists([[T]])
    with pytest.raises(ValueError):
        PolyComplex({0: 1, 1: 1, 2: 1}, {0: d0, 1: d1})


def test_constructor_rejects_bad_shape():
    with pytest.raises(ValueError):
        PolyComplex({0: 1, 1: 2}, {0: PolyMatrix.from_lists([[T]])})


def test_times_t_specializations():
    pc = times_t()
    assert specialize(pc, 1).is_zero
    assert specialize(pc, 0).dims == {0: 1, 1: 1}


def test_times_t_jump_locus():
    loc = jump_locus(times_t(), 1)
    assert loc.generic_dim == 0
    assert loc.points == {0: 1}
    assert loc.symbolic == []


def test_times_t_scan():
    v = semicontinuity_scan(times_t(), [0, 1, 2, 3], c=1)
    assert v.status == "PASS"
    assert v.upper_set == [0]
    assert v.jump_points == [0]


def test_constant_complex_has_no_jumps():
    pc = PolyComplex({0: 2, 1: 1}, {0: PolyMatrix.from_lists([[1, 2]])})
    for i in pc.ranks:
        assert jump_locus(pc, i).points == {}
    assert {specialize(pc, x).dims[0] for x in range(-3, 4)} == {1}
    assert semicontinuity_scan(pc, [0, 1, 2], c=0).status == "PASS"


def test_irreducible_quadratic_reported_symbolically():
    pc = PolyComplex({0: 1, 1: 1}, {0: PolyMatrix.from_lists([[T * T - 2]])})
    loc = jump_locus(pc, 1)
    assert loc.points == {}
    assert loc.symbolic


def test_box_filters_points():
    pc = PolyComplex({0: 1, 1: 1}, {0: PolyMatrix.from_lists([[(T - 5) * T]])})
    assert set(jump_locus(pc, 1).points) == {0, 5}
    assert set(jump_locus(pc, 1, box=(-1, 1)).points) == {0}


@given(st.lists(st.lists(st.lists(small, max_size=3), min_size=2, max_size=2), min_size=2, max_size=2),
       st.lists(st.integers(-6, 6), min_size=1, max_size=6))
def test_random_two_term_complex_matches_locus(entries, points):
    pc = PolyComplex({0: 2, 1: 2}, {0: PolyMatrix.from_lists(entries)})
    loci = {i: jump_locus(pc, i) for i in pc.ranks}
    eulers = set()
    for x in points:
        prof = specialize(pc, x)
        eulers.add(prof.euler())
        for i, loc in loci.items():
            assert prof.dims.get(i, 0) == loc.points.get(QQ(x), loc.generic_dim)
    assert len(eulers) == 1
    assert semicontinuity_scan(pc, points, c=0).status == "PASS"


# -- module families -----------------------------------------------------------------

def test_B2_family_rhom():
    M = B2_family()
    pc = family_rhom(M, M)
    assert pc.specialize(0).dims == {0: 2, 1: 1}
    for x in (1, 2, -3):
        assert pc.specialize(x).dims == {0: 1}
    loc = jump_locus(pc, 1)
    assert loc.generic_dim == 0 and loc.points == {0: 1}


def test_B2_family_matches_direct_rhom():
    M = B2_family()
    pc = family_rhom(M, M)
    for x in (0, 1, 2):
        Mx = M.specialize(x)
        assert Mx.validate() == []
        assert rhom(Mx, Mx).dims == pc.specialize(x).dims


def test_B2_family_scan_and_euler():
    pc = family_rhom(B2_family(), B2_family())
    v = semicontinuity_scan(pc, [0, 1, 2, 3], c=1)
    assert v.status == "PASS" and v.jump_points == [0]
    assert len(set(v.euler.values())) == 1


def test_projective_family_has_no_ext():
    A = B(2)
    P = ModuleFamily(A, {"1": 1, "2": 1}, {"a1": PolyMatrix.from_lists([[1]])})
    N = B2_family()
    pc = family_rhom(P, N)
    for x in range(-2, 3):
        assert pc.specialize(x).dims.get(1, 0) == 0


def test_zero_target_gives_zero_complex():
    A = B(2)
    Z = ModuleFamily(A, {"1": 0, "2": 0}, {"a1": PolyMatrix.zero(0, 0)})
    pc = family_rhom(B2_family(), Z)
    assert pc.ranks == {0: 0, 1: 0}
    assert specialize(pc, 0).is_zero


def test_kronecker_family_rhom_matches_oracle():
    A = kronecker(2)
    names = [a.name for a in A.quiver.arrows]
    M = ModuleFamily(A, {v: 1 for v in A.quiver.vertices},
                     {names[0]: PolyMatrix.from_lists([[1]]), names[1]: PolyMatrix.from_lists([[T]])})
    pc = family_rhom(M, M)
    for x in (0, 1, 2):
        assert rhom(M.specialize(x), M.specialize(x)).dims == pc.specialize(x).dims


def test_relations_are_rejected():
    with pytest.raises(NotHereditary):
        ModuleFamily(xyz(), {"0": 1, "1": 1, "2": 1}, {})


def test_cycles_are_rejected():
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "2", "1")))
    A = path_algebra(q, [["b", "a"], ["a", "b"]])
    with pytest.raises(NotHereditary):
        ModuleFamily(A, {"1": 1, "2": 1}, {})
