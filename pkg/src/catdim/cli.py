"""Command-line interface: ``catdim {info,serre,bounds,additivity,family,check}``.

Reports are JSON on stdout; a short human summary goes to stderr.  The exit
code is 0 iff the report contains no ``"FAIL"`` status.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

from . import __version__
from .algebra import AlgebraError, dynkin_type, is_semisimple, loewy_length, radical_series
from .bounds import AtLeast, additivity_check, ddim_interval, gldim, projective_dimensions, rouquier_interval
from .family import jump_locus, semicontinuity_scan
from .fileformat import ParseError, build, build_family, load
from .linalg import parse_field
from .projective import MaxLengthExceeded
from .serre import NotSmooth, SerreData, entropy, estimate_dims
from .suite import run_suite

REPORT_SCHEMA = "catdim.report/1"


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, AtLeast):
        return str(x)
    return x


def _statuses(x):
    if isinstance(x, dict):
        if isinstance(x.get("status"), str):
            yield x["status"]
        for v in x.values():
            yield from _statuses(v)
    elif isinstance(x, list):
        for v in x:
            yield from _statuses(v)


def _floats(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _points(text: str) -> list[Fraction]:
    return [Fraction(t.strip()) for t in text.split(",") if t.strip()]


def _algebra(path: str, args):
    af = load(path)
    F = parse_field(args.field) if args.field else None
    return af, build(af, F)


# -- commands -------------------------------------------------------------------

def cmd_info(args) -> dict:
    af, A = _algebra(args.path, args)
    q = A.quiver
    series = [len(layer) for layer in radical_series(A)]
    g = gldim(A, args.cap)
    return {
        "algebra": af.to_json(),
        "dim": A.dim,
        "vertices": A.nverts,
        "graded": A.graded,
        "gldim": g,
        "projective_dimensions": projective_dimensions(A, args.cap),
        "loewy_length": loewy_length(A),
        "radical_series_dims": series,
        "semisimple": is_semisimple(A),
        "dynkin": dynkin_type(q) if q is not None and not A.relations else None,
        "cartan_matrix": A.cartan_matrix(),
    }


def cmd_serre(args) -> dict:
    af, A = _algebra(args.path, args)
    sd = SerreData(A, args.cap)
    rep = estimate_dims(sd, args.m_max, args.period_max)
    out = {"algebra": af.to_json(), "dimensions": rep.to_json()}
    if args.entropy:
        out["entropy"] = entropy(sd, _floats(args.entropy), args.entropy_n or args.m_max).to_json()
    return out


def cmd_bounds(args) -> dict:
    af, A = _algebra(args.path, args)
    return {"algebra": af.to_json(), "gldim": gldim(A, args.cap),
            "rdim": rouquier_interval(A, args.cap).to_json(),
            "ddim": ddim_interval(A, args.cap).to_json()}


def cmd_additivity(args) -> dict:
    afa, A = _algebra(args.path, args)
    afb, B = _algebra(args.other, args)
    out = additivity_check(A, B, args.m_max, args.period_max, args.cap)
    out["algebras"] = [afa.to_json(), afb.to_json()]
    return out


def cmd_family(args) -> dict:
    af, A = _algebra(args.path, args)
    kind, obj = build_family(af, A)
    pc = obj if kind == "complex" else obj[2]
    pts = [A.field(p) for p in _points(args.points)]
    lo, hi = (int(x) for x in args.window.split(","))
    specs = {str(p): pc.specialize(p).to_json() for p in pts}
    loci = [jump_locus(pc, i).to_json() for i in sorted(pc.ranks)]
    scans = [semicontinuity_scan(pc, pts, c).to_json() for c in range(lo, hi + 1)]
    eulers = {str(p): pc.specialize(p).euler() for p in pts}
    checks = [{"name": "euler-constant", "status": "PASS" if len(set(eulers.values())) <= 1 else "FAIL",
               "detail": eulers}]
    if kind == "modules":
        from .serre import rhom
        M, N, _ = obj
        bad = [str(p) for p in pts
               if rhom(M.specialize(p), N.specialize(p)).dims != pc.specialize(p).dims]
        checks.append({"name": "rhom-oracle", "status": "FAIL" if bad else "PASS",
                       "detail": {"mismatches": bad}})
    return {"algebra": af.to_json(), "kind": kind, "specializations": specs,
            "jump_loci": loci, "scans": scans, "checks": checks}


def cmd_check(args) -> dict:
    af, A = _algebra(args.path, args)
    out = run_suite(A, samples=args.samples, m_max=args.m_max, period_max=args.period_max,
                    seed=args.seed, cap=args.cap)
    out["algebra"] = af.to_json()
    return out


# -- plumbing -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catdim", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"catdim {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="override the file's field: q or p:PRIME")
    common.add_argument("--cap", type=int, default=None, help="resolution length cap")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="dimension, gldim, Loewy series, Dynkin verdict")
    s.add_argument("path")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("serre", parents=[common], help="Serre dimension report")
    s.add_argument("path")
    s.add_argument("--m-max", type=int, default=24)
    s.add_argument("--period-max", type=int, default=8)
    s.add_argument("--entropy", help="comma-separated t values")
    s.add_argument("--entropy-n", type=int, default=None, help="largest power for entropy (default m-max)")
    s.set_defaults(func=cmd_serre)

    s = sub.add_parser("bounds", parents=[common], help="Rdim and Ddim intervals")
    s.add_argument("path")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("additivity", parents=[common], help="slopes of A (x) B against A and B")
    s.add_argument("path")
    s.add_argument("other")
    s.add_argument("--m-max", type=int, default=48)
    s.add_argument("--period-max", type=int, default=12)
    s.set_defaults(func=cmd_additivity)

    s = sub.add_parser("family", parents=[common], help="specializations, jump loci, semicontinuity")
    s.add_argument("path")
    s.add_argument("--points", default="0,1,2,3")
    s.add_argument("--window", default="0,1", help="thresholds lo,hi for the semicontinuity scan")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("check", parents=[common], help="run the invariant suite")
    s.add_argument("path")
    s.add_argument("--m-max", type=int, default=16)
    s.add_argument("--period-max", type=int, default=6)
    s.add_argument("--samples", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_check)
    return p


def _summary(report: dict) -> str:
    lines = [f"{report['command']}: {report['status']} ({report['seconds']} s)"]
    dims = report.get("dimensions")
    if dims:
        lines.append(f"  LSdim {dims['lsdim']['value']} [{dims['lsdim']['flag']}]"
                     f"  USdim {dims['usdim']['value']} [{dims['usdim']['flag']}]")
    for key in ("rdim", "ddim"):
        iv = report.get(key)
        if isinstance(iv, dict) and "lower" in iv:
            lines.append(f"  {key}: [{iv['lower']}, {iv['upper']}] exact={iv['exact']}")
    for c in report.get("checks", []):
        lines.append(f"  {c['status']:5} {c['name']}")
    if "error" in report:
        lines.append(f"  error: {report['error']}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    report: dict = {"schema": REPORT_SCHEMA, "command": args.command}
    code = 0
    try:
        report.update(args.func(args))
    except ParseError as e:
        report.update(error=str(e), error_type="ParseError", location=e.location)
        code = 2
    except (AlgebraError, MaxLengthExceeded, NotSmooth, ValueError) as e:
        report.update(error=str(e), error_type=type(e).__name__)
        code = 2
    report = _jsonable(report)
    failed = "FAIL" in set(_statuses(report))
    report["status"] = "ERROR" if code else ("FAIL" if failed else "OK")
    report["seconds"] = round(time.perf_counter() - t0, 3)
    if failed and not code:
        code = 1
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    print(_summary(report), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
