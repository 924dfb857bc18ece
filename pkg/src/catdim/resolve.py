"""Minimal projective resolutions and right-projective bimodule resolutions.

Modules here have zero differential.  Resolutions are built block by block,
a block being a pair (vertex, internal degree): the top of the current
syzygy ``K`` is ``K / K.rad`` with ``K.rad`` spanned by ``K`` times radical
generators, lifts of a top basis give a projective cover, and its kernel is
the next syzygy.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Algebra, radical_generators, sign
from .linalg import Echelon, axpy, kernel_of_images, scale
from .modules import DgModule, ModuleError
from .projective import MaxLengthExceeded, ProjComplex

Vec = dict


class _ModuleAmbient:
    def __init__(self, M: DgModule):
        self.M = M
        self.size = M.dim

    def block(self, i: int):
        return self.M.vertex[i], self.M.degrees[i]

    def mul(self, x: Vec, b: int) -> Vec:
        return self.M.act_basis(x, b)


class _FreeAmbient:
    """``(+)_h h.e_{v_h}B`` with k-basis ``(h, beta)``."""

    def __init__(self, B: Algebra, gens: Sequence[tuple[int, int]]):
        self.B = B
        self.gens = list(gens)
        self.basis = [(h, b) for h, (v, _) in enumerate(self.gens) for b in B.by_lv(v)]
        self.index = {p: i for i, p in enumerate(self.basis)}
        self.size = len(self.basis)

    def block(self, i: int):
        h, b = self.basis[i]
        return self.B.rv[b], self.gens[h][1] + self.B.degrees[b]

    def mul(self, x: Vec, b: int) -> Vec:
        B, F, out = self.B, self.B.field, {}
        index, basis, prods = self.index, self.basis, B.products
        for i, c in x.items():
            h, beta = basis[i]
            p = prods[beta].get(b)
            if p:
                for b2, e in p.items():
                    k = index[(h, b2)]
                    s = out.get(k, 0) + c * e
                    if F.p:
                        s %= F.p
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out


def _vec_block(amb, x: Vec):
    return amb.block(next(iter(x)))


def _cover(amb, sub: list[Vec], G: list[int], B: Algebra):
    """Projective cover of the submodule spanned by ``sub`` (a module basis)."""
    F = B.field
    spans = defaultdict(lambda: Echelon(F))
    for x in sub:
        for g in G:
            y = amb.mul(x, g)
            if y:
                spans[_vec_block(amb, y)].add(y)
    gens, images = [], []
    for x in sub:
        blk = _vec_block(amb, x)
        if spans[blk].add(x) is None:
            gens.append(blk)
            images.append(x)
    return gens, images


def _kernel(free: _FreeAmbient, images: list[Vec], prev) -> list[Vec]:
    F = free.B.field
    blocks = defaultdict(list)
    for i in range(free.size):
        blocks[free.block(i)].append(i)
    out = []
    for idx in blocks.values():
        imgs = []
        for i in idx:
            h, b = free.basis[i]
            imgs.append(prev.mul(images[h], b))
        for kv in kernel_of_images(imgs, F):
            out.append({idx[t]: c for t, c in kv.items()})
    return out


def _block_rank(vectors: list[Vec], F) -> int:
    ech = Echelon(F)
    for v in vectors:
        ech.add(v)
    return ech.rank


@dataclass
class Resolution:
    """Minimal projective resolution ``P_L -> ... -> P_0 -> M``.

    ``terms[j]`` lists the generators ``(vertex, internal degree)`` of ``P_j``;
    ``maps[0][h]`` is the image of a generator of ``P_0`` in ``M`` and
    ``maps[j][h]`` the image of a generator of ``P_j`` in ``P_{j-1}``.
    """

    module: DgModule
    terms: list[list[tuple[int, int]]]
    maps: list[list[Vec]]
    ambients: list = field(repr=False, default_factory=list)

    @property
    def algebra(self) -> Algebra:
        return self.module.algebra

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def complex(self) -> ProjComplex:
        """Total complex, generators of ``P_j`` placed in degree ``internal - j``."""
        A = self.algebra
        gens, D, labels, offsets = [], [], [], []
        for j, term in enumerate(self.terms):
            offsets.append(len(gens))
            for h, (v, n) in enumerate(term):
                gens.append((v, n - j))
                labels.append(f"P{j}.{h}")
        for j, term in enumerate(self.terms):
            for h in range(len(term)):
                col = {}
                if j >= 1:
                    amb = self.ambients[j - 1]
                    for i, c in self.maps[j][h].items():
                        h2, b = amb.basis[i]
                        t = offsets[j - 1] + h2
                        cur = col.setdefault(t, {})
                        axpy(cur, c, {b: 1}, A.field)
                        if not cur:
                            col.pop(t)
                D.append(col)
        return ProjComplex(A, gens, D, labels=labels)

    def verify_exact(self) -> bool:
        """Rank bookkeeping over every block certifies exactness."""
        M, F = self.module, self.module.algebra.field
        chain = [_ModuleAmbient(M)] + self.ambients
        ranks = []
        for j, amb in enumerate(self.ambients):
            per = defaultdict(list)
            for i in range(amb.size):
                h, b = amb.basis[i]
                per[amb.block(i)].append(chain[j].mul(self.maps[j][h], b))
            ranks.append({blk: _block_rank(v, F) for blk, v in per.items()})
        for j, amb in enumerate(chain):
            dims = defaultdict(int)
            for i in range(amb.size):
                dims[amb.block(i)] += 1
            into = ranks[j] if j < len(ranks) else {}
            out = ranks[j - 1] if j >= 1 else {}
            for blk, n in dims.items():
                if into.get(blk, 0) + out.get(blk, 0) != n:
                    return False
        return True


def minimal_resolution(M: DgModule, max_len: int | None = None) -> Resolution:
    """Minimal projective resolution of a module with zero differential."""
    B = M.algebra
    if M.d:
        raise ModuleError("minimal_resolution needs a module with zero differential; "
                          "use a ProjComplex model instead")
    if max_len is None:
        max_len = B.dim + 10
    G = radical_generators(B)
    amb = _ModuleAmbient(M)
    sub = [{i: 1} for i in range(M.dim)]
    res = Resolution(M, [], [], [])
    j = 0
    while sub:
        if j > max_len:
            raise MaxLengthExceeded(f"resolution longer than {max_len}", res)
        gens, images = _cover(amb, sub, G, B)
        free = _FreeAmbient(B, gens)
        res.terms.append(gens)
        res.maps.append(images)
        res.ambients.append(free)
        sub = _kernel(free, images, amb)
        amb = free
        j += 1
    if not res.terms:
        res.terms.append([])
        res.maps.append([])
        res.ambients.append(_FreeAmbient(B, []))
    return res


def projective_dimension(M: DgModule, cap: int) -> int | None:
    """pd of ``M`` or None when it exceeds ``cap``."""
    try:
        return minimal_resolution(M, cap).length
    except MaxLengthExceeded:
        return None


# -- bimodules --------------------------------------------------------------

@dataclass
class _RightForm:
    gens: list[tuple[int, int]]          # (right vertex, internal degree)
    lv: list[int]
    vectors: list[Vec]
    lam: dict[int, list[dict[int, Vec]]]
    ech: Echelon


def _right_projective_form(amb, sub: list[Vec], A: Algebra, env: Algebra,
                           GA: list[int]) -> _RightForm | None:
    """Right-free presentation of a sub-bimodule, or None if it is not right projective."""
    F, nA, dA = A.field, A.nverts, A.dim
    vb = A.vertex_basis

    def uw(x):
        ev, n = _vec_block(amb, x)
        return ev // nA, ev % nA, n

    def right(x, b, u):
        return amb.mul(x, vb[u] * dA + b)

    def left(x, a, w, n):
        return scale(amb.mul(x, a * dA + vb[w]), sign(A.degrees[a] * n), F)

    spans = defaultdict(lambda: Echelon(F))
    for x in sub:
        u, w, n = uw(x)
        for g in GA:
            y = right(x, g, u)
            if y:
                spans[uw(y)].add(y)
    gens, lv, vectors = [], [], []
    for x in sub:
        u, w, n = uw(x)
        if spans[(u, w, n)].add(x) is None:
            gens.append((w, n))
            lv.append(u)
            vectors.append(x)
    if sum(len(A.by_lv(w)) for w, _ in gens) != len(sub):
        return None
    ech = Echelon(F, track=True)
    for gi, (w, _) in enumerate(gens):
        for b in A.by_lv(w):
            if ech.add(right(vectors[gi], b, lv[gi]), (gi, b)) is not None:
                return None
    lam: dict[int, list[dict[int, Vec]]] = {}
    for a in range(dA):
        rows = []
        for gi, (w, n) in enumerate(gens):
            y = left(vectors[gi], a, w, n) if A.rv[a] == lv[gi] else {}
            out: dict[int, Vec] = {}
            if y:
                coeffs = ech.express(y)
                if coeffs is None:
                    raise ModuleError("sub-bimodule is not closed under the left action")
                for (gj, b), c in coeffs.items():
                    cur = out.setdefault(gj, {})
                    axpy(cur, c, {b: 1}, F)
                    if not cur:
                        out.pop(gj)
            rows.append(out)
        lam[a] = rows
    return _RightForm(gens, lv, vectors, lam, ech)


@dataclass
class BimoduleResolution:
    """Resolution ``K -> P_{L-1} -> ... -> P_0 -> M`` of a bimodule ``M`` with
    ``P_j`` free over the enveloping algebra and ``K`` projective as a right
    module.  ``complex`` is its total complex as a right-projective bimodule."""

    algebra: Algebra
    module: DgModule
    terms: list[list[tuple[int, int]]]
    maps: list[list[Vec]]
    ambients: list
    last: _RightForm
    complex: ProjComplex

    @property
    def length(self) -> int:
        return len(self.terms)

    def verify_exact(self) -> bool:
        """The total complex has the graded dimensions of ``M`` in cohomology."""
        prof = self.complex.cohomology()
        dims = defaultdict(int)
        for n in self.module.degrees:
            dims[n] += 1
        return prof.dims == {n: d for n, d in dims.items() if d}


def bimodule_resolution(M: DgModule, A: Algebra, max_len: int | None = None) -> BimoduleResolution:
    """Right-projective resolution of an ``A``-bimodule ``M`` (a module over
    the enveloping algebra), stopping at the first right-projective syzygy."""
    env = M.algebra
    if M.d:
        raise ModuleError("bimodule must have zero differential")
    if max_len is None:
        max_len = A.dim + 10
    G = radical_generators(env)
    GA = radical_generators(A)
    amb = _ModuleAmbient(M)
    sub = [{i: 1} for i in range(M.dim)]
    terms, maps, ambients = [], [], []
    while True:
        rf = _right_projective_form(amb, sub, A, env, GA) if sub else \
            _RightForm([], [], [], {a: [] for a in range(A.dim)}, Echelon(A.field, track=True))
        if rf is not None:
            break
        if len(terms) >= max_len:
            raise MaxLengthExceeded(f"no right-projective syzygy within {max_len} steps",
                                    (terms, maps))
        gens, images = _cover(amb, sub, G, env)
        free = _FreeAmbient(env, gens)
        terms.append(gens)
        maps.append(images)
        ambients.append(free)
        sub = _kernel(free, images, amb)
        amb = free
    T = _total_right_complex(A, env, terms, maps, ambients, rf)
    return BimoduleResolution(A, M, terms, maps, ambients, rf, T)


def _total_right_complex(A, env, terms, maps, ambients, rf) -> ProjComplex:
    F, dA, nA = A.field, A.dim, A.nverts
    vb = A.vertex_basis
    L = len(terms)
    gens, lv, labels = [], [], []
    index = {}
    for j, term in enumerate(terms):
        for h, (ev, n) in enumerate(term):
            u, w = divmod(ev, nA)
            for a in A.by_rv(u):
                index[(j, h, a)] = len(gens)
                gens.append((w, n + A.degrees[a] - j))
                lv.append(A.lv[a])
                labels.append(f"P{j}.{h}.{A.labels[a]}")
    for gi, (w, n) in enumerate(rf.gens):
        index[(L, gi)] = len(gens)
        gens.append((w, n - L))
        lv.append(rf.lv[gi])
        labels.append(f"K{L}.{gi}")
    N = len(gens)

    def convert(j, vec):
        """Vector in the free term ``P_j`` -> right coordinates."""
        amb, out = ambients[j], {}
        for i, c in vec.items():
            h, beta = amb.basis[i]
            a, b = divmod(beta, dA)
            t = index[(j, h, a)]
            cur = out.setdefault(t, {})
            axpy(cur, c, {b: 1}, F)
            if not cur:
                out.pop(t)
        return out

    D: list[dict[int, Vec]] = [{} for _ in range(N)]
    for j in range(1, L):
        for h, (ev, n) in enumerate(terms[j]):
            u, w = divmod(ev, nA)
            for a in A.by_rv(u):
                img = ambients[j - 1].mul(maps[j][h], a * dA + vb[w])
                D[index[(j, h, a)]] = convert(j - 1, img)
    if L >= 1:
        for gi, x in enumerate(rf.vectors):
            D[index[(L, gi)]] = convert(L - 1, x)
    lam: dict[int, list[dict[int, Vec]]] = {x: [{} for _ in range(N)] for x in range(dA)}
    for j, term in enumerate(terms):
        for h, (ev, n) in enumerate(term):
            u, w = divmod(ev, nA)
            for a in A.by_rv(u):
                k = index[(j, h, a)]
                for x, p in A.left_products[a].items():
                    s = sign(A.degrees[x] * (j + n))
                    col = {}
                    for a2, c in p.items():
                        col[index[(j, h, a2)]] = {vb[w]: F.norm(s * c)}
                    lam[x][k] = col
    for x in range(dA):
        s = sign(L * A.degrees[x])
        for gi in range(len(rf.gens)):
            k = index[(L, gi)]
            lam[x][k] = {index[(L, gj)]: scale(c, s, F) for gj, c in rf.lam[x][gi].items()}
    return ProjComplex(A, gens, D, lam, lv, labels)
