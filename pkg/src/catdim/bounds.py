"""Global dimension, Rouquier/diagonal dimension intervals and additivity.

Every bound carries a rule tag naming the fact it rests on:

``loewy-length-bound``       Rdim <= Loewy length
``gldim-bound``              Rdim, Ddim <= global dimension
``dynkin-classification``    Rdim = 0 for ADE path algebras
``non-dynkin-hereditary``    Rdim = 1 for other connected acyclic quivers
``acyclic-hereditary``       Ddim = 1 for connected acyclic quivers without relations
``two-vertex-multiarrow``    Rdim = Ddim = 1 for >= 2 arrows between two vertices
``semisimple-classification`` Ddim = 0 exactly for semisimple algebras
``block-count-bound``        Ddim <= (number of exceptional blocks) - 1
``rdim-le-ddim``             Rdim <= Ddim
``ddim-subadditivity``       Ddim(A (x) B) <= Ddim A + Ddim B
``not-smooth-within-cap``    global dimension exceeds the cap
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, dynkin_type, is_ade, loewy_length, radical_generators, tensor_product
from .modules import simple_module
from .projective import MaxLengthExceeded
from .resolve import minimal_resolution

INF = math.inf


@dataclass(frozen=True)
class AtLeast:
    """Global dimension known only to be at least ``value``."""

    value: int

    def __str__(self):
        return f">={self.value}"


def gldim(a: Algebra, cap: int | None = None) -> int | AtLeast:
    """Maximal projective dimension of the simple modules."""
    if cap is None:
        cap = a.dim + 10
    best = 0
    for v in range(a.nverts):
        try:
            best = max(best, minimal_resolution(simple_module(a, v), cap).length)
        except MaxLengthExceeded:
            return AtLeast(cap)
    return best


def projective_dimensions(a: Algebra, cap: int | None = None) -> dict[str, int | AtLeast]:
    cap = a.dim + 10 if cap is None else cap
    out = {}
    for v in range(a.nverts):
        try:
            out[a.vertices[v]] = minimal_resolution(simple_module(a, v), cap).length
        except MaxLengthExceeded:
            out[a.vertices[v]] = AtLeast(cap)
    return out


@dataclass
class BoundInterval:
    lower: int
    upper: float | int
    exact: int | None = None
    provenance: list[tuple[object, str]] = field(default_factory=list)

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")
        if self.exact is not None and not self.lower <= self.exact <= self.upper:
            raise ValueError("exact value outside the interval")

    def to_json(self) -> dict:
        up = "inf" if self.upper == INF else self.upper
        return {"lower": self.lower, "upper": up, "exact": self.exact,
                "provenance": [{"value": ("inf" if v == INF else v), "rule": r}
                               for v, r in self.provenance]}


def gabriel_arrows(a: Algebra) -> list[tuple[int, int]]:
    """Vertex pairs of radical generators (the Ext-quiver, with multiplicity)."""
    return [(a.lv[b], a.rv[b]) for b in radical_generators(a)]


def exceptional_blocks(a: Algebra) -> list[list[str]] | None:
    """Declared blocks, or longest-path levels of an acyclic Ext-quiver."""
    if a.blocks:
        return [list(b) for b in a.blocks]
    arrows = gabriel_arrows(a)
    n = a.nverts
    level = [0] * n
    for _ in range(n + 1):
        changed = False
        for s, t in arrows:
            if s == t:
                return None
            if level[t] < level[s] + 1:
                level[t] = level[s] + 1
                changed = True
        if not changed:
            break
    else:
        return None
    if changed:
        return None
    groups = defaultdict(list)
    for v in range(n):
        groups[level[v]].append(a.vertices[v])
    return [groups[k] for k in sorted(groups)]


def _hereditary_rule(a: Algebra):
    """Exact Rdim/Ddim for relation-free path algebras of acyclic quivers."""
    q = a.quiver
    if q is None or a.relations or not q.arrows:
        return None
    if not (q.is_acyclic() and q.is_connected()):
        return None
    verdict = dynkin_type(q)
    graded = any(x.degree for x in q.arrows)
    if len(q.vertices) == 2 and len(q.arrows) >= 2:
        return 1, 1, "two-vertex-multiarrow"
    if graded and verdict == "NotTree":
        return None
    if is_ade(verdict):
        return 0, 1, "dynkin-classification"
    return 1, 1, "non-dynkin-hereditary"


def _ddim_tag(rule) -> str:
    return rule[2] if rule[2] == "two-vertex-multiarrow" else "acyclic-hereditary"


def rouquier_interval(a: Algebra, cap: int | None = None) -> BoundInterval:
    prov: list[tuple[object, str]] = []
    ll = loewy_length(a)
    upper: float = ll
    prov.append((ll, "loewy-length-bound"))
    g = gldim(a, cap)
    if not isinstance(g, AtLeast):
        prov.append((g, "gldim-bound"))
        upper = min(upper, g)
    exact = None
    rule = _hereditary_rule(a)
    if rule is not None:
        exact = rule[0]
        prov.append((exact, rule[2]))
    elif upper == 0:
        exact = 0
    if exact is not None:
        return BoundInterval(exact, exact, exact, prov)
    return BoundInterval(0, upper, None, prov)


def ddim_interval(a: Algebra, cap: int | None = None) -> BoundInterval:
    prov: list[tuple[object, str]] = []
    if loewy_length(a) == 0:
        return BoundInterval(0, 0, 0, [(0, "semisimple-classification")])
    lower = 1
    prov.append((1, "semisimple-classification"))
    r = rouquier_interval(a, cap)
    if r.lower > lower:
        lower = r.lower
        prov.append((r.lower, "rdim-le-ddim"))
    upper: float = INF
    g = gldim(a, cap)
    if isinstance(g, AtLeast):
        prov.append((INF, "not-smooth-within-cap"))
    else:
        upper = g
        prov.append((g, "gldim-bound"))
        blocks = exceptional_blocks(a)
        if blocks is not None and len(blocks) - 1 >= lower:
            prov.append((len(blocks) - 1, "block-count-bound"))
            upper = min(upper, len(blocks) - 1)
    exact = None
    rule = _hereditary_rule(a)
    if rule is not None and rule[1] <= upper:
        exact = rule[1]
        prov.append((exact, _ddim_tag(rule)))
    elif lower == upper:
        exact = lower
    if exact is not None:
        lower = upper = exact
    return BoundInterval(lower, upper, exact, prov)


def additivity_check(a: Algebra, b: Algebra, m_max: int = 48, period_max: int = 12,
                     cap: int | None = None) -> dict:
    """Serre slopes of ``a (x) b`` against the sums over the factors, and the
    diagonal-dimension interval of the product against the factor intervals."""
    from .serre import SerreData, estimate_dims

    c = tensor_product(a, b)
    reps = {}
    for key, alg in (("A", a), ("B", b), ("AxB", c)):
        reps[key] = estimate_dims(SerreData(alg), m_max, period_max)
    checks = []
    for side in ("lsdim", "usdim"):
        ra, rb, rc = (reps[k] for k in ("A", "B", "AxB"))
        flags = {getattr(r, side + "_flag") for r in (ra, rb, rc)}
        expected = getattr(ra, side) + getattr(rb, side)
        got = getattr(rc, side)
        if flags == {"exact_pattern"}:
            status = "PASS" if expected == got else "FAIL"
        else:
            status = "INCONCLUSIVE"
        checks.append({"name": f"{side}-additivity", "expected": str(expected),
                       "computed": str(got), "status": status})
    da, db, dc = ddim_interval(a, cap), ddim_interval(b, cap), ddim_interval(c, cap)
    bound = da.upper + db.upper
    checks.append({"name": "ddim-subadditivity", "expected": f"<= {bound}",
                   "computed": dc.to_json(),
                   "status": "PASS" if dc.lower <= bound else "FAIL"})
    if bound < dc.upper:
        dc.upper = bound
        dc.provenance.append((bound, "ddim-subadditivity"))
    return {"reports": {k: r.to_json() for k, r in reps.items()},
            "ddim": {"A": da.to_json(), "B": db.to_json(), "AxB": dc.to_json()},
            "checks": checks}
