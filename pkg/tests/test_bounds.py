from __future__ import annotations

import math
from fractions import Fraction

import pytest

from catdim.algebra import Quiver, dynkin_type, path_algebra, tensor_product
from catdim.bounds import (AtLeast, BoundInterval, additivity_check, ddim_interval, gldim,
                           projective_dimensions, rouquier_interval)
from catdim.catalog import (EXPECTED_DYNKIN, B, dual_numbers, dynkin_quivers, graded_kronecker,
                            kronecker, xyz)


def semisimple(n: int):
    return path_algebra(Quiver(tuple(str(i) for i in range(n)), ()), [])


def tags(iv: BoundInterval) -> set[str]:
    return {t for _, t in iv.provenance}


def test_gldim_values():
    assert gldim(B(2)) == 1
    assert gldim(B(3)) == 1
    assert gldim(xyz()) == 3
    assert gldim(semisimple(2)) == 0
    assert gldim(dual_numbers(-1), cap=20) == AtLeast(20)
    assert str(AtLeast(20)) == ">=20"


def test_projective_dimensions_of_xyz():
    assert projective_dimensions(xyz()) == {"0": 1, "1": 3, "2": 2}


@pytest.mark.parametrize("pair", [(B(2), B(2)), (B(2), B(3)), (B(3), B(3))],
                         ids=["B2B2", "B2B3", "B3B3"])
def test_gldim_of_tensor_is_sum(pair):
    a, b = pair
    assert gldim(tensor_product(a, b)) == gldim(a) + gldim(b)


def test_rdim_of_B2_is_zero():
    iv = rouquier_interval(B(2))
    assert iv.exact == 0 and iv.lower == 0
    assert "dynkin-classification" in tags(iv)


def test_rdim_of_kronecker_is_one():
    iv = rouquier_interval(kronecker(2))
    assert iv.exact == 1
    assert tags(iv) & {"two-vertex-multiarrow", "non-dynkin-hereditary"}


def test_rdim_of_xyz_is_interval():
    iv = rouquier_interval(xyz())
    assert (iv.lower, iv.upper, iv.exact) == (0, 2, None)
    assert "loewy-length-bound" in tags(iv)


def test_rdim_of_graded_kronecker():
    iv = rouquier_interval(graded_kronecker([0, 2]))
    assert iv.exact == 1


@pytest.mark.parametrize("name", sorted(dynkin_quivers()))
def test_rdim_on_classifier_quivers(name):
    q = dynkin_quivers()[name]
    assert dynkin_type(q) == EXPECTED_DYNKIN[name]
    if not q.is_acyclic():
        return
    iv = rouquier_interval(path_algebra(q, []))
    assert iv.exact == (0 if EXPECTED_DYNKIN[name] != "NotTree" else 1)


def test_ddim_semisimple_is_zero():
    iv = ddim_interval(semisimple(2))
    assert iv.exact == 0 and "semisimple-classification" in tags(iv)


def test_ddim_B3_is_one():
    iv = ddim_interval(B(3))
    assert iv.exact == 1 and "acyclic-hereditary" in tags(iv)


def test_ddim_kronecker_is_one():
    assert ddim_interval(kronecker(2)).exact == 1


def test_ddim_xyz_upper_bound_from_blocks():
    iv = ddim_interval(xyz())
    assert iv.upper == 2 and iv.lower == 1 and iv.exact is None
    assert "block-count-bound" in tags(iv)


def test_ddim_dual_numbers_infinite():
    iv = ddim_interval(dual_numbers(-1), cap=8)
    assert iv.upper == math.inf
    assert "not-smooth-within-cap" in tags(iv)


@pytest.mark.parametrize("A", [B(2), B(3), xyz(), kronecker(2), semisimple(3)],
                         ids=lambda a: a.name or "k^3")
def test_rdim_lower_le_ddim(A):
    r, d = rouquier_interval(A), ddim_interval(A)
    assert r.lower <= d.lower <= d.upper
    assert r.lower <= r.upper


def test_every_exact_verdict_has_a_tag():
    for A in (B(2), B(3), kronecker(2), semisimple(2), graded_kronecker([0, 2])):
        for iv in (rouquier_interval(A), ddim_interval(A)):
            if iv.exact is not None:
                assert any(v == iv.exact for v, _ in iv.provenance)
                js = iv.to_json()
                assert js["provenance"]


def test_interval_rejects_inverted_bounds():
    with pytest.raises(ValueError):
        BoundInterval(2, 1, None, [])
    with pytest.raises(ValueError):
        BoundInterval(0, 1, 3, [])


def test_additivity_B2_B2():
    out = additivity_check(B(2), B(2), 24, 8)
    checks = {c["name"]: c for c in out["checks"]}
    assert checks["lsdim-additivity"]["status"] == "PASS"
    assert checks["usdim-additivity"]["computed"] == "2/3"
    assert checks["ddim-subadditivity"]["status"] == "PASS"


def test_additivity_B2_B3():
    out = additivity_check(B(2), B(3), 48, 12)
    checks = {c["name"]: c for c in out["checks"]}
    assert checks["usdim-additivity"]["status"] == "PASS"
    assert Fraction(checks["usdim-additivity"]["computed"]) == Fraction(5, 6)


def test_additivity_with_ground_field():
    out = additivity_check(B(3), semisimple(1), 24, 8)
    assert all(c["status"] == "PASS" for c in out["checks"])
    assert out["reports"]["AxB"]["usdim"]["value"] == "1/2"
