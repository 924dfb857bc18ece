"""Finite-dimensional graded algebras given by structure constants.

Path algebras multiply in traversal order: for paths ``p`` and ``q`` the
product ``p*q`` is "first p, then q", so ``e_{s(p)} p e_{t(p)} = p`` and right
modules are ordinary (covariant) quiver representations.  Relations and path
labels are written in composition order, rightmost arrow first, so the path
"x then y" is labelled ``yx``.

Algebras built from quivers, and anything derived from them by tensor
products and opposites, carry a *vertex-adapted* basis: every vertex
idempotent is a basis element, every basis element ``b`` satisfies
``e_{lv(b)} b e_{rv(b)} = b``, and the non-idempotent basis elements span the
radical.  The homological code relies on this.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import QQ, Echelon, Field, Matrix, axpy, kernel_basis, rank_of, scale


class AlgebraError(ValueError):
    """Structure constants violate an algebra axiom."""


class InfiniteDimensional(ValueError):
    """The path algebra modulo the relations is infinite-dimensional."""


class NotNilpotent(ValueError):
    """The radical series does not terminate."""


def sign(n: int) -> int:
    return -1 if n & 1 else 1


# -- quivers ----------------------------------------------------------------

@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    degree: int = 0


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} uses an undeclared vertex")

    @classmethod
    def from_edges(cls, vertices: Iterable, edges: Iterable[tuple], prefix: str = "a"):
        """Build from ``(source, target[, degree])`` tuples with generated names."""
        arrows = []
        for i, e in enumerate(edges):
            deg = e[2] if len(e) > 2 else 0
            arrows.append(Arrow(f"{prefix}{i}", str(e[0]), str(e[1]), deg))
        return cls(tuple(str(v) for v in vertices), tuple(arrows))

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        out = defaultdict(list)
        for a in self.arrows:
            out[a.source].append(a.target)
            indeg[a.target] += 1
        stack = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return seen == len(self.vertices)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj = defaultdict(set)
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen, stack = {self.vertices[0]}, [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def longest_path_levels(self) -> dict[str, int]:
        """Level of each vertex = length of the longest path ending there."""
        if not self.is_acyclic():
            raise ValueError("quiver has an oriented cycle")
        level = {v: 0 for v in self.vertices}
        for _ in self.vertices:
            for a in self.arrows:
                level[a.target] = max(level[a.target], level[a.source] + 1)
        return level


# -- algebras ---------------------------------------------------------------

class Algebra:
    """Graded associative unital algebra with explicit structure constants.

    ``products[i][j]`` is the sparse vector ``b_i * b_j`` (absent when zero).
    When ``vertices`` is given the basis is vertex-adapted: ``vertex_basis[v]``
    is the basis index of ``e_v`` and ``lv``/``rv`` give the idempotents
    fixing each basis element on the left/right.
    """

    def __init__(self, field: Field, labels: Sequence[str], degrees: Sequence[int],
                 products: Sequence[dict[int, dict]], unit: dict,
                 vertices: Sequence[str] | None = None,
                 vertex_basis: Sequence[int] | None = None,
                 lv: Sequence[int] | None = None, rv: Sequence[int] | None = None,
                 name: str = "", quiver: Quiver | None = None,
                 relations: Sequence[tuple[str, ...]] = (), blocks=None,
                 check: bool = True):
        self.field = field
        self.labels = list(labels)
        self.degrees = list(degrees)
        self.products = [dict(p) for p in products]
        self.unit = dict(unit)
        self.vertices = list(vertices) if vertices is not None else None
        self.vertex_basis = list(vertex_basis) if vertex_basis is not None else None
        self.lv = list(lv) if lv is not None else None
        self.rv = list(rv) if rv is not None else None
        self.name = name
        self.quiver = quiver
        self.relations = [tuple(r) for r in relations]
        self.blocks = blocks
        n = len(self.labels)
        if len(self.degrees) != n or len(self.products) != n:
            raise AlgebraError("basis data has inconsistent lengths")
        self._left: list[dict[int, dict]] | None = None
        self._by_lv = self._by_rv = None
        if check:
            problems = self.validate()
            if problems:
                raise AlgebraError("; ".join(problems[:5]))

    # basic access
    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def adapted(self) -> bool:
        return self.vertices is not None

    @property
    def nverts(self) -> int:
        return len(self.vertices) if self.vertices is not None else 0

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim})"

    def mul_basis(self, i: int, j: int) -> dict:
        return self.products[i].get(j, {})

    def mul(self, u: dict, v: dict) -> dict:
        F, out = self.field, {}
        prods = self.products
        for i, a in u.items():
            row = prods[i]
            if not row:
                continue
            for j, b in v.items():
                p = row.get(j)
                if p:
                    axpy(out, a * b, p, F)
        return out

    def element_degree(self, u: dict) -> int | None:
        degs = {self.degrees[i] for i in u}
        if len(degs) > 1:
            raise ValueError("inhomogeneous element")
        return degs.pop() if degs else None

    @property
    def left_products(self) -> list[dict[int, dict]]:
        """``left_products[j][i] = b_i * b_j``."""
        if self._left is None:
            left: list[dict[int, dict]] = [{} for _ in range(self.dim)]
            for i, row in enumerate(self.products):
                for j, p in row.items():
                    left[j][i] = p
            self._left = left
        return self._left

    def by_lv(self, v: int) -> list[int]:
        if self._by_lv is None:
            self._by_lv = [[] for _ in range(self.nverts)]
            self._by_rv = [[] for _ in range(self.nverts)]
            for b in range(self.dim):
                self._by_lv[self.lv[b]].append(b)
                self._by_rv[self.rv[b]].append(b)
        return self._by_lv[v]

    def by_rv(self, v: int) -> list[int]:
        self.by_lv(0) if self.nverts else None
        return self._by_rv[v]

    def idempotent(self, v: int) -> dict:
        return {self.vertex_basis[v]: 1}

    def is_idempotent_basis(self, b: int) -> bool:
        return self.adapted and self.lv[b] == self.rv[b] and self.vertex_basis[self.lv[b]] == b

    @property
    def graded(self) -> bool:
        return any(self.degrees)

    # validation
    def associativity_failures(self, limit: int = 10) -> list[tuple[int, int, int]]:
        """Basis triples where ``(b_i b_j) b_l != b_i (b_j b_l)``."""
        F, prods, left = self.field, self.products, self.left_products
        lhs: dict[tuple, dict] = defaultdict(dict)
        rhs: dict[tuple, dict] = defaultdict(dict)
        for i, row in enumerate(prods):
            for j, p in row.items():
                for k, c in p.items():
                    for l, q in prods[k].items():
                        axpy(lhs[(i, j, l)], c, q, F)
        for j, row in enumerate(prods):
            for l, p in row.items():
                for k, c in p.items():
                    for i, q in left[k].items():
                        axpy(rhs[(i, j, l)], c, q, F)
        bad = []
        for key in set(lhs) | set(rhs):
            if lhs.get(key, {}) != rhs.get(key, {}):
                bad.append(key)
                if len(bad) >= limit:
                    break
        return sorted(bad)

    def validate(self) -> list[str]:
        problems = []
        F = self.field
        for i, row in enumerate(self.products):
            for j, p in row.items():
                for k in p:
                    if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                        problems.append(f"degree not additive for {self.labels[i]}*{self.labels[j]}")
        for b in range(self.dim):
            e = {b: 1}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                problems.append(f"unit law fails at {self.labels[b]}")
        if any(self.degrees[i] for i in self.unit):
            problems.append("unit is not of degree 0")
        if self.adapted:
            total: dict = {}
            for v, b in enumerate(self.vertex_basis):
                if self.mul_basis(b, b) != {b: 1}:
                    problems.append(f"e_{self.vertices[v]} is not idempotent")
                axpy(total, 1, {b: 1}, F)
                for w, c in enumerate(self.vertex_basis):
                    if v != w and self.mul_basis(b, c):
                        problems.append("vertex idempotents not orthogonal")
            if total != self.unit:
                problems.append("vertex idempotents do not sum to the unit")
            for b in range(self.dim):
                e = {b: 1}
                if (self.mul(self.idempotent(self.lv[b]), e) != e
                        or self.mul(e, self.idempotent(self.rv[b])) != e):
                    problems.append(f"basis element {self.labels[b]} not vertex-homogeneous")
        bad = self.associativity_failures()
        for (i, j, l) in bad:
            problems.append(f"associativity fails on ({self.labels[i]},{self.labels[j]},{self.labels[l]})")
        return problems

    def with_structure_constant(self, i: int, j: int, k: int, value) -> "Algebra":
        """Copy with ``c_{ij}^k`` replaced, without validation (for negative controls)."""
        prods = [{jj: dict(p) for jj, p in row.items()} for row in self.products]
        p = prods[i].setdefault(j, {})
        value = self.field(value)
        if value:
            p[k] = value
        else:
            p.pop(k, None)
        return Algebra(self.field, self.labels, self.degrees, prods, self.unit,
                       self.vertices, self.vertex_basis, self.lv, self.rv,
                       name=self.name + "~", check=False)

    def structure_constants(self) -> dict[tuple[int, int, int], object]:
        return {(i, j, k): c for i, row in enumerate(self.products)
                for j, p in row.items() for k, c in p.items()}

    def cartan_matrix(self) -> list[list[int]]:
        """``C[x][y] = dim e_x A e_y`` (ungraded count)."""
        n = self.nverts
        C = [[0] * n for _ in range(n)]
        for b in range(self.dim):
            C[self.lv[b]][self.rv[b]] += 1
        return C

    def signed_cartan_matrix(self) -> list[list[int]]:
        """``C[x][y]`` = Euler characteristic of ``e_x A e_y``."""
        n = self.nverts
        C = [[0] * n for _ in range(n)]
        for b in range(self.dim):
            C[self.lv[b]][self.rv[b]] += sign(self.degrees[b])
        return C


# -- constructions ----------------------------------------------------------

def _path_label(q: Quiver, path: tuple[int, ...]) -> str:
    names = [q.arrows[i].name for i in reversed(path)]
    joiner = "" if all(len(n) == 1 for n in names) else "."
    return joiner.join(names)


def path_algebra(q: Quiver, relations: Iterable[Sequence[str]] = (), field: Field = QQ,
                 name: str = "", blocks=None) -> Algebra:
    """Path algebra of ``q`` modulo monomial relations.

    Each relation is a sequence of arrow names in composition order, so
    ``("z", "y")`` kills the path "y then z".
    """
    idx = {a.name: i for i, a in enumerate(q.arrows)}
    rels = []
    for r in relations:
        r = tuple(r)
        if not r:
            raise ValueError("empty relation")
        try:
            t = tuple(idx[nm] for nm in reversed(r))
        except KeyError as e:
            raise ValueError(f"relation uses unknown arrow {e.args[0]}") from None
        for a, b in zip(t, t[1:]):
            if q.arrows[a].target != q.arrows[b].source:
                raise ValueError(f"relation {''.join(r)} is not composable")
        rels.append(t)
    rel_set = set(rels)
    rlen = max((len(r) for r in rels), default=1)

    def survives(p: tuple[int, ...]) -> bool:
        for L in range(1, min(rlen, len(p)) + 1):
            for s in range(len(p) - L + 1):
                if p[s:s + L] in rel_set:
                    return False
        return True

    vpos = {v: i for i, v in enumerate(q.vertices)}
    out_arrows = defaultdict(list)
    for i, a in enumerate(q.arrows):
        out_arrows[a.source].append(i)
    paths: list[tuple[int, ...]] = []
    layer = [(i,) for i in range(len(q.arrows)) if survives((i,))]
    bound = len(q.vertices) * (len(q.arrows) + 1) ** max(rlen - 1, 0)
    length = 1
    while layer:
        if length > bound:
            raise InfiniteDimensional(
                f"surviving paths of length {length} exist; the algebra is infinite-dimensional")
        paths.extend(layer)
        nxt = []
        for p in layer:
            for a in out_arrows[q.arrows[p[-1]].target]:
                # only suffixes touching the new arrow need checking
                cand = p + (a,)
                if all(cand[-L:] not in rel_set for L in range(1, min(rlen, len(cand)) + 1)):
                    nxt.append(cand)
        layer = nxt
        length += 1

    nv = len(q.vertices)
    labels = [f"e{v}" for v in q.vertices] + [_path_label(q, p) for p in paths]
    degrees = [0] * nv + [sum(q.arrows[i].degree for i in p) for p in paths]
    lv = list(range(nv)) + [vpos[q.arrows[p[0]].source] for p in paths]
    rv = list(range(nv)) + [vpos[q.arrows[p[-1]].target] for p in paths]
    pindex = {p: nv + i for i, p in enumerate(paths)}
    n = len(labels)
    products: list[dict[int, dict]] = [{} for _ in range(n)]
    for v in range(nv):
        products[v][v] = {v: 1}
    for p, i in pindex.items():
        products[lv[i]][i] = {i: 1}
        products[i][rv[i]] = {i: 1}
    for p, i in pindex.items():
        for r, j in pindex.items():
            if rv[i] == lv[j]:
                k = pindex.get(p + r)
                if k is not None:
                    products[i][j] = {k: 1}
    unit = {v: 1 for v in range(nv)}
    return Algebra(field, labels, degrees, products, unit, list(q.vertices),
                   list(range(nv)), lv, rv, name=name, quiver=q,
                   relations=[tuple(r) for r in relations], blocks=blocks)


def ground_algebra(field: Field = QQ) -> Algebra:
    """The field ``k`` as a one-vertex algebra."""
    return Algebra(field, ["1"], [0], [{0: {0: 1}}], {0: 1}, ["*"], [0], [0], [0],
                   name="k", quiver=Quiver(("*",)))


def semisimple_algebra(n: int, field: Field = QQ) -> Algebra:
    """``k x ... x k`` with ``n`` factors."""
    q = Quiver(tuple(str(i) for i in range(n)))
    return path_algebra(q, field=field, name=f"k^{n}")


def tensor_product(a: Algebra, b: Algebra, check: bool | None = None) -> Algebra:
    """``a (x) b`` with ``(x(x)y)(x'(x)y') = (-1)^{|y||x'|} xx' (x) yy'``."""
    if a.field != b.field:
        raise ValueError("algebras over different fields")
    F = a.field
    nb = b.dim
    labels = [f"{x}|{y}" for x in a.labels for y in b.labels]
    degrees = [dx + dy for dx in a.degrees for dy in b.degrees]
    products: list[dict[int, dict]] = [{} for _ in range(a.dim * nb)]
    for i, arow in enumerate(a.products):
        for i2, p in arow.items():
            for j, brow in enumerate(b.products):
                s0 = sign(b.degrees[j] * a.degrees[i2])
                for j2, q in brow.items():
                    out = {}
                    for k, c in p.items():
                        for l, d in q.items():
                            out[k * nb + l] = F.norm(s0 * c * d)
                    products[i * nb + j][i2 * nb + j2] = out
    unit = {k * nb + l: F.norm(c * d) for k, c in a.unit.items() for l, d in b.unit.items()}
    kw = {}
    if a.adapted and b.adapted:
        kw = dict(
            vertices=[f"{u}|{w}" for u in a.vertices for w in b.vertices],
            vertex_basis=[x * nb + y for x in a.vertex_basis for y in b.vertex_basis],
            lv=[a.lv[x] * b.nverts + b.lv[y] for x in range(a.dim) for y in range(nb)],
            rv=[a.rv[x] * b.nverts + b.rv[y] for x in range(a.dim) for y in range(nb)],
        )
    if check is None:
        check = a.dim * nb <= 200
    name = f"{a.name}(x){b.name}" if a.name and b.name else ""
    return Algebra(F, labels, degrees, products, unit, name=name, check=check, **kw)


def opposite(a: Algebra, check: bool | None = None) -> Algebra:
    """Graded opposite: ``b o b' = (-1)^{|b||b'|} b' b``."""
    F = a.field
    products: list[dict[int, dict]] = [{} for _ in range(a.dim)]
    for i, row in enumerate(a.products):
        for j, p in row.items():
            products[j][i] = scale(p, sign(a.degrees[i] * a.degrees[j]), F)
    kw = {}
    if a.adapted:
        kw = dict(vertices=a.vertices, vertex_basis=a.vertex_basis, lv=a.rv, rv=a.lv)
    if check is None:
        check = a.dim <= 200
    quiver = None
    if a.quiver is not None:
        quiver = Quiver(a.quiver.vertices, tuple(Arrow(x.name, x.target, x.source, x.degree)
                                                 for x in a.quiver.arrows))
    name = f"{a.name}^op" if a.name else ""
    return Algebra(F, a.labels, a.degrees, products, a.unit, name=name, quiver=quiver,
                   relations=[tuple(reversed(r)) for r in a.relations], check=check, **kw)


def enveloping(a: Algebra) -> Algebra:
    """``A^e = A^op (x) A``; right ``A^e``-modules are ``A``-bimodules."""
    return tensor_product(opposite(a), a, check=a.dim <= 14)


# -- radical ----------------------------------------------------------------

def radical_basis(a: Algebra) -> list[dict]:
    """Basis of the Jacobson radical.

    Vertex-adapted algebras use the span of non-idempotent basis elements.
    Otherwise the trace-form radical ``{x : tr L_{xy} = 0 for all y}`` is used,
    which is valid in characteristic zero.
    """
    if a.adapted:
        vb = set(a.vertex_basis)
        return [{b: 1} for b in range(a.dim) if b not in vb]
    if a.field.p:
        raise NotImplementedError("radical of a non-adapted algebra needs characteristic 0")
    traces = []
    for j in range(a.dim):
        # tr(L_{b_j}) where L_b x = b x
        t = 0
        for x in range(a.dim):
            t += a.mul_basis(j, x).get(x, 0)
        traces.append(t)
    form = []
    for i in range(a.dim):
        row = {}
        for j in range(a.dim):
            prod = a.mul_basis(i, j)
            s = sum(c * traces[k] for k, c in prod.items())
            if s:
                row[j] = s
        form.append(row)
    K = kernel_basis(Matrix(a.dim, a.dim, form, a.field).transpose())
    return [c for c in K.columns()]


def _span(vectors: Iterable[dict], F: Field) -> list[dict]:
    ech = Echelon(F)
    for v in vectors:
        ech.add(v)
    return list(ech.rows.values())


def radical_series(a: Algebra) -> list[list[dict]]:
    """Bases of ``rad, rad^2, ...`` down to and excluding zero."""
    rad = radical_basis(a)
    series = []
    cur = _span(rad, a.field)
    steps = 0
    while cur:
        series.append(cur)
        steps += 1
        if steps > a.dim + 1:
            raise NotNilpotent("radical series does not terminate")
        cur = _span((a.mul(x, r) for x in cur for r in rad), a.field)
        if len(cur) >= len(series[-1]):
            raise NotNilpotent("radical power did not shrink")
    return series


def loewy_length(a: Algebra) -> int:
    """Minimal ``d`` with ``rad^{d+1} = 0``."""
    return len(radical_series(a))


def is_semisimple(a: Algebra) -> bool:
    return loewy_length(a) == 0


def radical_generators(a: Algebra) -> list[int]:
    """Basis indices of radical elements whose span covers ``rad / rad^2``."""
    if not a.adapted:
        raise ValueError("needs a vertex-adapted algebra")
    vb = set(a.vertex_basis)
    rad = [b for b in range(a.dim) if b not in vb]
    ech = Echelon(a.field)
    for x in rad:
        for y in rad:
            p = a.mul_basis(x, y)
            if p:
                ech.add(p)
    gens = []
    for b in rad:
        if ech.add({b: 1}) is None:
            gens.append(b)
    return gens


# -- Dynkin classification ---------------------------------------------------

def dynkin_type(q: Quiver) -> str:
    """ADE type of the underlying graph: ``"A(n)"``, ``"D(n)"``, ``"E6"``,
    ``"E7"``, ``"E8"``, ``"NotDynkin"`` or ``"NotTree"``."""
    n = len(q.vertices)
    edges = set()
    for a in q.arrows:
        if a.source == a.target:
            return "NotTree"
        e = frozenset((a.source, a.target))
        if e in edges:
            return "NotTree"
        edges.add(e)
    if n == 0 or len(edges) != n - 1 or not q.is_connected():
        return "NotTree"
    adj = defaultdict(list)
    for e in edges:
        u, v = tuple(e)
        adj[u].append(v)
        adj[v].append(u)
    branch = [v for v in q.vertices if len(adj[v]) >= 3]
    if not branch:
        return f"A({n})"
    if len(branch) > 1 or len(adj[branch[0]]) > 3:
        return "NotDynkin"
    c = branch[0]
    legs = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while len(adj[cur]) == 2:
            prev, cur = cur, next(w for w in adj[cur] if w != prev)
            length += 1
        legs.append(length)
    legs.sort()
    if legs[0] == 1 and legs[1] == 1:
        return f"D({n})"
    if legs[0] == 1 and legs[1] == 2 and legs[2] in (2, 3, 4):
        return f"E{n}"
    return "NotDynkin"


def is_ade(verdict: str) -> bool:
    return verdict not in ("NotDynkin", "NotTree")


def cached_opposite(a: Algebra) -> Algebra:
    op = getattr(a, "_opposite", None)
    if op is None:
        op = opposite(a)
        op._opposite = a
        a._opposite = op
    return op


def cached_enveloping(a: Algebra) -> Algebra:
    env = getattr(a, "_enveloping", None)
    if env is None:
        env = enveloping(a)
        a._enveloping = env
    return env
