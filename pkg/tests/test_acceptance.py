"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line; the lines are
repeated in the terminal summary by ``conftest.py``.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

from catdim.algebra import Arrow, Quiver, cached_opposite, dynkin_type, is_ade, path_algebra, tensor_product
from catdim.bounds import ddim_interval, gldim, rouquier_interval
from catdim.catalog import EXPECTED_DYNKIN, B, dual_numbers, dynkin_quivers, graded_kronecker, tensor_power, xyz
from catdim.family import ModuleFamily, Poly, PolyComplex, PolyMatrix, family_rhom, jump_locus, semicontinuity_scan
from catdim.modules import regular_module, simple_module
from catdim.projective import ProjComplex
from catdim.randoms import random_complex, random_module
from catdim.serre import (SerreData, duality_check, entropy, estimate_dims, inverse_serre_bimodule,
                          kill_left_radical, rhom, serre_bimodule)
from catdim.suite import check_linear_growth

VERDICTS: list[str] = []


def verdict(n: int, title: str, ok: bool, detail="") -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    VERDICTS.append(line)
    print(line)
    assert ok, line


def test_criterion_01_linear_quiver_table():
    cases = [
        ("B2", lambda: B(2), Fraction(1, 3), 60),
        ("B3", lambda: B(3), Fraction(1, 2), 60),
        ("B2(x)B2", lambda: tensor_power(B(2), 2), Fraction(2, 3), 60),
        ("B3(x)B3", lambda: tensor_power(B(3), 2), Fraction(1), 60),
        ("B2(x)B2(x)B2", lambda: tensor_power(B(2), 3), Fraction(1), 300),
    ]
    bad, details = [], []
    for name, make, want, limit in cases:
        t0 = time.perf_counter()
        r = estimate_dims(SerreData(make()), 24, 8)
        dt = time.perf_counter() - t0
        ok = (r.lsdim == want and r.usdim == want
              and r.lsdim_flag == r.usdim_flag == "exact_pattern" and dt < limit)
        details.append(f"{name} {r.lsdim},{r.usdim} {dt:.1f}s")
        if not ok:
            bad.append(name)
    verdict(1, "Serre dimensions of B2, B3 and tensor products", not bad, "; ".join(details))


def test_criterion_02_dual_numbers_shift():
    bad = []
    for w in (-2, -1, 1):
        A = dual_numbers(w)
        sd = SerreData(A)
        base = ProjComplex.regular(A).cohomology().dims
        shifts = all(sd.profile(m).dims == {i - m * w: d for i, d in base.items()} for m in range(25))
        r = estimate_dims(sd, 24, 8)
        if not (shifts and r.lsdim == r.usdim == w and r.lsdim_flag == r.usdim_flag == "exact_pattern"):
            bad.append(w)
    verdict(2, "dual numbers: every power is the shift by m*w", not bad, f"failing w: {bad}")


def test_criterion_03_graded_kronecker():
    A = graded_kronecker([0, 2])
    r = estimate_dims(SerreData(A), 24, 8)
    rd, dd = rouquier_interval(A), ddim_interval(A)
    ok = ((r.lsdim, r.usdim) == (-1, 3) and r.lsdim_flag == r.usdim_flag == "exact_pattern"
          and rd.exact == 1 and dd.exact == 1)
    verdict(3, "graded Kronecker (0, 2): LSdim -1, USdim 3, Rdim = Ddim = 1", ok,
            f"{r.lsdim},{r.usdim} rdim={rd.exact} ddim={dd.exact}")


def test_criterion_04_xyz():
    A = xyz()
    sd = SerreData(A)
    sups = [sd.profile(m).sup for m in range(13)]
    r = estimate_dims(sd, 24, 8)
    g, dd = gldim(A), ddim_interval(A)
    ok = (all(s == 0 for s in sups) and r.lsdim == 0 and r.lsdim_flag == "exact_pattern"
          and r.usdim == 3 and r.usdim_flag == "exact_pattern" and g == 3 and dd.upper == 2)
    verdict(4, "xyz: sup = 0, USdim 3, gldim 3, Ddim <= 2", ok,
            f"lsdim={r.lsdim} usdim={r.usdim} gldim={g} ddim<={dd.upper}")


def test_criterion_05_additivity():
    A, Bb = B(2), B(3)
    r = estimate_dims(SerreData(tensor_product(A, Bb)), 48, 12)
    want = Fraction(1, 3) + Fraction(1, 2)
    ok = r.lsdim == r.usdim == want and r.lsdim_flag == r.usdim_flag == "exact_pattern"
    verdict(5, "B2 (x) B3 has Serre dimension 5/6", ok, f"{r.lsdim},{r.usdim}")


def test_criterion_06_entropy():
    rep = entropy(SerreData(B(2)), [-1.0, 0.0, 1.0], 30)
    h = rep.final
    errs = {t: abs(h[t] - h[0.0] - t / 3) for t in (-1.0, 0.0, 1.0)}
    verdict(6, "entropy of B2 is linear in t with slope 1/3", max(errs.values()) <= 0.1,
            ", ".join(f"t={t:+.0f}: {e:.3f}" for t, e in errs.items()))


def test_criterion_07_invariant_suites():
    failures = []
    rng = random.Random(7)

    # duality on random module pairs
    for A in (B(3), xyz()):
        sd = SerreData(A)
        pairs = [(random_module(A, rng), random_module(A, rng)) for _ in range(50)]
        pairs += [(simple_module(A, v), regular_module(A)) for v in range(A.nverts)]
        if not all(duality_check(A, M, N, sd) for M, N in pairs):
            failures.append(f"duality over {A.name}")

    # rhom against tensor powers
    for A in (B(2), B(3), xyz(), graded_kronecker([0, 2])):
        sd = SerreData(A)
        for m in range(1, 9):
            prof = sd.profile(m)
            via_hom = rhom(sd.power(m - 1), regular_module(A)).reversed()
            direct = rhom(ProjComplex.regular(A), sd.power(m).to_module())
            if via_hom.dims != prof.dims or (direct.inf, direct.sup) != (prof.inf, prof.sup):
                failures.append(f"rhom-vs-powers {A.name} m={m}")

    # inverse Serre negation
    for A in (B(2), B(3)):
        sd = SerreData(A)
        r = estimate_dims(sd, 24, 8)
        inv = estimate_dims(inverse_serre_bimodule(sd), 24, 8)
        if not (r.lsdim == -inv.usdim and r.usdim == -inv.lsdim
                and {r.lsdim_flag, r.usdim_flag, inv.lsdim_flag, inv.usdim_flag} == {"exact_pattern"}):
            failures.append(f"inverse negation {A.name}")

    # sup-subadditivity over nonpositively graded algebras
    pairs = 0
    for A in (B(3), xyz(), dual_numbers(-1), graded_kronecker([0, -1])):
        op = cached_opposite(A)
        for _ in range(13):
            M = random_complex(A, rng, steps=2)
            N = random_complex(op, rng, steps=2).to_module()
            pairs += 1
            if M.tensor_kcomplex(N).profile().sup > M.cohomology().sup + N.cohomology().sup:
                failures.append(f"subadditivity {A.name}")
    if pairs < 50:
        failures.append("too few subadditivity pairs")

    # linear growth over every computed power
    for A in (B(2), B(3), xyz(), graded_kronecker([0, 2]), tensor_power(B(2), 2)):
        r = estimate_dims(SerreData(A), 24, 8)
        if check_linear_growth(r.sequence)["status"] != "PASS":
            failures.append(f"linear growth {A.name}")

    # minimize preserves cohomology
    count = 0
    for A in (B(2), B(3), xyz(), graded_kronecker([0, 2]), dual_numbers(-1)):
        for _ in range(24):
            X = random_complex(A, rng, steps=4)
            Y = X.minimize()
            count += 1
            if Y.cohomology().dims != X.cohomology().dims or Y.has_unit_entries():
                failures.append(f"minimize {A.name}")
    if count < 100:
        failures.append("too few minimize samples")

    verdict(7, "invariant suites", not failures, "; ".join(failures[:5]))


def test_criterion_08_classifiers():
    bad = []
    quivers = dynkin_quivers()
    for name, q in quivers.items():
        if dynkin_type(q) != EXPECTED_DYNKIN[name]:
            bad.append(f"dynkin {name}")
    extra = {
        "affine-A2": Quiver(("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3"),
                                              Arrow("c", "1", "3"))),
        "affine-D4": Quiver(("c", "1", "2", "3", "4"),
                            tuple(Arrow(f"a{i}", "c", str(i)) for i in range(1, 5))),
    }
    for name, q in list(quivers.items()) + list(extra.items()):
        if not (q.is_acyclic() and q.is_connected()):
            continue
        want = 0 if is_ade(dynkin_type(q)) else 1
        if rouquier_interval(path_algebra(q, [])).exact != want:
            bad.append(f"rdim {name}")
    verdict(8, "Dynkin verdicts and Rdim of hereditary algebras", not bad, ", ".join(bad))


def test_criterion_09_family():
    t = Poly.t()
    pc = PolyComplex({0: 1, 1: 1}, {0: PolyMatrix.from_lists([[t]])})
    loc = jump_locus(pc, 1)
    ok1 = loc.generic_dim == 0 and loc.points == {0: 1}

    A = B(2)
    M = ModuleFamily(A, {"1": 1, "2": 1}, {"a1": PolyMatrix.from_lists([[t]])})
    rh = family_rhom(M, M)
    pts = [0, 1, 2, 3]
    ok2 = (rh.specialize(0).dims == {0: 2, 1: 1}
           and all(rh.specialize(x).dims == {0: 1} for x in pts[1:])
           and all(rhom(M.specialize(x), M.specialize(x)).dims == rh.specialize(x).dims for x in pts))
    scan = semicontinuity_scan(rh, pts, c=1)
    ok3 = scan.status == "PASS" and len(set(scan.euler.values())) == 1
    verdict(9, "jump locus of t, family Hom over B2, semicontinuity", ok1 and ok2 and ok3,
            f"locus={loc.to_json()['points']} scan={scan.status} euler={sorted(set(scan.euler.values()))}")


def test_criterion_10_negative_controls():
    A = B(3)
    e1, a1 = A.labels.index("e1"), A.labels.index("a1")
    corrupt = A.with_structure_constant(e1, a1, a1, 2)
    assoc_caught = bool(corrupt.associativity_failures()) and not A.associativity_failures()

    sd_bad = SerreData(A, bimodule=kill_left_radical(serre_bimodule(A), A))
    sd = SerreData(A)
    pairs = [(simple_module(A, v), regular_module(A)) for v in range(A.nverts)]
    duality_caught = (any(not duality_check(A, M, N, sd_bad) for M, N in pairs)
                      and all(duality_check(A, M, N, sd) for M, N in pairs))
    verdict(10, "corrupted structure constant and corrupted A* are both detected",
            assoc_caught and duality_caught, f"associativity={assoc_caught} duality={duality_caught}")

