"""Invariant suite shared by ``catdim check`` and the test-suite.

Every check returns ``{"name", "status", "detail"}`` with status PASS, FAIL
or SKIP.  Random inputs come from a seeded generator so runs are repeatable.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

from .algebra import Algebra, cached_opposite
from .bounds import AtLeast, gldim
from .modules import regular_module, simple_module, tensor_over_A
from .projective import ProjComplex
from .randoms import random_complex, random_module
from .serre import (NotSmooth, SerreData, coxeter_class, detect_pattern, duality_check,
                    estimate_dims, inverse_serre_bimodule, rhom, serre_bimodule)


def _result(name: str, ok: bool | None, detail) -> dict:
    status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
    return {"name": name, "status": status, "detail": detail}


def check_associativity(A: Algebra) -> dict:
    bad = A.associativity_failures()
    return _result("associativity", not bad, {"failures": [list(t) for t in bad[:5]]})


def check_serre_bimodule(A: Algebra) -> dict:
    got = serre_bimodule(A).cohomology()
    want = ProjComplex.regular(A).cohomology().reversed()
    return _result("serre-bimodule-graded-dual", got.dims == want.dims,
                   {"serre": got.to_json()["dims"], "algebra": want.to_json()["dims"]})


def check_resolution(sd: SerreData) -> dict:
    res = sd.resolution
    return _result("bimodule-resolution-exact", res.verify_exact(), {"length": res.length})


def check_duality(sd: SerreData, rng: random.Random, samples: int, smooth: bool) -> dict:
    A = sd.algebra
    failures, count = [], 0
    pairs = [(ProjComplex.regular(A), regular_module(A))]
    if smooth:
        pairs += [(random_complex(A, rng, steps=2), simple_module(A, v)) for v in range(A.nverts)]
        pairs += [(simple_module(A, v), regular_module(A)) for v in range(A.nverts)]
    while len(pairs) < samples:
        M = random_complex(A, rng, steps=2)
        N = random_module(A, rng) if smooth and rng.random() < 0.5 else random_complex(A, rng, steps=2)
        pairs.append((M, N))
    for i, (M, N) in enumerate(pairs):
        ok, lhs, rhs = duality_check(A, M, N, sd, details=True)
        count += 1
        if not ok:
            failures.append({"pair": i, "hom": lhs.to_json()["dims"], "dual": rhs.to_json()["dims"]})
    return _result("serre-duality", not failures, {"pairs": count, "failures": failures[:3]})


def check_rhom_vs_powers(sd: SerreData, m_max: int = 8) -> dict:
    """``H^i(S^m A) = Hom^{-i}(S^{m-1} A, A)`` and ``e_pm(A, S^m A) = (inf_m, sup_m)``."""
    A = sd.algebra
    bad = []
    for m in range(1, m_max + 1):
        prof = sd.profile(m)
        via_hom = rhom(sd.power(m - 1), regular_module(A)).reversed()
        direct = rhom(ProjComplex.regular(A), sd.power(m).to_module())
        if prof.dims != via_hom.dims or (direct.inf, direct.sup) != (prof.inf, prof.sup):
            bad.append(m)
    return _result("rhom-vs-powers", not bad, {"m_max": m_max, "mismatches": bad})


def check_minimize(A: Algebra, rng: random.Random, samples: int) -> dict:
    bad = 0
    for _ in range(samples):
        X = random_complex(A, rng)
        Y = X.minimize()
        if Y.cohomology() != X.cohomology() or Y.has_unit_entries():
            bad += 1
    return _result("minimize-preserves-cohomology", bad == 0, {"samples": samples, "failures": bad})


def check_linear_growth(seq) -> dict:
    """``|inf_m|, |sup_m| <= c m + c`` with ``c`` fitted on the first half."""
    M = len(seq) - 1
    half = max(M // 2, 1)
    vals = [(m, max(abs(i), abs(s))) for m, i, s in seq]
    c = max(Fraction(v, m) for m, v in vals[1:half + 1]) + 1 if M >= 1 else 1
    bad = [m for m, v in vals[half:] if v > c * m + c]
    return _result("linear-growth", not bad, {"c": str(c), "violations": bad})


def check_inverse_negation(sd: SerreData, report, m_max: int, period_max: int,
                           smooth: bool) -> dict:
    if not smooth:
        return _result("inverse-serre-negation", None, "global dimension not finite within cap")
    try:
        inv = estimate_dims(inverse_serre_bimodule(sd), m_max, period_max)
    except NotSmooth as e:
        return _result("inverse-serre-negation", False, str(e))
    flags = {report.lsdim_flag, report.usdim_flag, inv.lsdim_flag, inv.usdim_flag}
    ok = report.lsdim == -inv.usdim and report.usdim == -inv.lsdim
    detail = {"lsdim": str(report.lsdim), "inverse_usdim": str(inv.usdim),
              "usdim": str(report.usdim), "inverse_lsdim": str(inv.lsdim)}
    return _result("inverse-serre-negation", ok if flags == {"exact_pattern"} else None, detail)


def check_e_minus_slope(sd: SerreData, report, m_max: int, period_max: int) -> dict:
    """Slope of ``e_-(S^m A, A)`` matches ``-sup_m`` slope."""
    A = sd.algebra
    vals = [rhom(sd.power(m), regular_module(A)).inf for m in range(m_max + 1)]
    if any(isinstance(v, float) for v in vals):
        return _result("e-minus-slope", None, "zero Hom complex")
    pat = detect_pattern(vals, min(period_max, max(1, m_max // 2)))
    if pat is None or report.lsdim_flag != "exact_pattern":
        return _result("e-minus-slope", None, {"values": vals})
    return _result("e-minus-slope", pat.slope == report.lsdim,
                   {"slope": str(pat.slope), "lsdim": str(report.lsdim)})


def check_sup_nonpositive(A: Algebra, seq, smooth: bool) -> dict:
    if A.graded or not smooth:
        return _result("sup-nonpositive", None, "applies to ungraded algebras of finite global dimension")
    bad = [m for m, _, s in seq if s > 0]
    return _result("sup-nonpositive", not bad, {"violations": bad})


def check_coxeter(sd: SerreData, smooth: bool) -> dict:
    if not smooth:
        return _result("coxeter-class", None, "global dimension not finite within cap")
    A = sd.algebra
    try:
        classes = [list(coxeter_class(sd, simple_module(A, v))) for v in range(A.nverts)]
    except AssertionError as e:
        return _result("coxeter-class", False, str(e))
    return _result("coxeter-class", True, {"simples": classes})


def check_sup_subadditivity(A: Algebra, rng: random.Random, samples: int) -> dict:
    if any(d > 0 for d in A.degrees):
        return _result("sup-subadditivity", None, "algebra has positive degrees")
    op = cached_opposite(A)
    bad = []
    for i in range(samples):
        M = random_complex(A, rng, steps=2)
        N = random_complex(op, rng, steps=2).to_module()
        lhs = M.tensor_kcomplex(N).profile().sup
        if lhs > M.cohomology().sup + N.cohomology().sup:
            bad.append(i)
    return _result("sup-subadditivity", not bad, {"samples": samples, "violations": bad})


def check_unit_constraint(A: Algebra, rng: random.Random, samples: int) -> dict:
    op = cached_opposite(A)
    bad = 0
    for _ in range(samples):
        N = random_module(op, rng)
        if tensor_over_A(regular_module(A), N).cohomology().dims != N.cohomology().dims:
            bad += 1
    return _result("unit-constraint", bad == 0, {"samples": samples, "failures": bad})


def run_suite(A: Algebra, samples: int = 10, m_max: int = 16, period_max: int = 6,
              seed: int = 0, cap: int | None = None) -> dict:
    """Run every invariant on ``A``; returns checks and timing."""
    t0 = time.perf_counter()
    rng = random.Random(seed)
    g = gldim(A, cap if cap is not None else A.dim + 10)
    smooth = not isinstance(g, AtLeast)
    sd = SerreData(A)
    report = estimate_dims(sd, m_max, period_max)
    checks = [
        check_associativity(A),
        check_serre_bimodule(A),
        check_resolution(sd),
        check_duality(sd, rng, samples, smooth),
        check_rhom_vs_powers(sd, min(8, m_max)),
        check_minimize(A, rng, samples),
        check_linear_growth(report.sequence),
        check_inverse_negation(sd, report, m_max, period_max, smooth),
        check_e_minus_slope(sd, report, m_max, period_max),
        check_sup_nonpositive(A, report.sequence, smooth),
        check_coxeter(sd, smooth),
        check_sup_subadditivity(A, rng, samples),
        check_unit_constraint(A, rng, samples),
    ]
    return {"checks": checks, "seconds": round(time.perf_counter() - t0, 3)}
