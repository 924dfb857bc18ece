"""Random objects for property tests: projective complexes built from
iterated cones, gauge changes and contractible summands, and quotient
modules of free modules."""
from __future__ import annotations

import random
from collections import defaultdict

from .algebra import Algebra
from .linalg import Echelon, Vec, axpy, kernel_of_images
from .modules import DgModule
from .projective import ProjComplex, cone


def _coef(rng: random.Random, F) -> int:
    while True:
        c = F(rng.randint(-3, 3))
        if c:
            return c


def _elements(A: Algebra, u: int, w: int, degree: int) -> list[int]:
    """Basis elements in ``e_u A e_w`` of the given degree."""
    return [b for b in A.by_lv(u) if A.rv[b] == w and A.degrees[b] == degree]


def random_cocycle(X: ProjComplex, w: int, e: int, rng: random.Random):
    """A random chain map ``X -> P_w`` with ``P_w`` generated in degree ``e``,
    or None if only the zero map exists."""
    A, F = X.algebra, X.field
    unknowns = []
    for t, (vt, dt) in enumerate(X.gens):
        unknowns.extend((t, b) for b in _elements(A, w, vt, dt - e))
    if not unknowns:
        return None
    images = []
    for t, b in unknowns:
        img: Vec = {}
        for s in range(X.ngens):
            c = X.D[s].get(t)
            if c:
                for k, x in A.mul({b: 1}, c).items():
                    img[s * A.dim + k] = x
        images.append(img)
    kernel = kernel_of_images(images, F)
    if not kernel:
        return None
    f: Vec = {}
    for vec in kernel:
        axpy(f, _coef(rng, F), vec, F)
    out: dict[int, Vec] = defaultdict(dict)
    for i, c in f.items():
        t, b = unknowns[i]
        out[t][b] = c
    return {t: {0: v} for t, v in out.items()} or None


def gauge(X: ProjComplex, rng: random.Random, steps: int = 3) -> ProjComplex:
    """Apply random elementary basis changes ``g_s -> g_s + g_t c``."""
    A, F = X.algebra, X.field
    D = [{t: dict(c) for t, c in col.items()} for col in X.D]
    n = X.ngens
    for _ in range(steps):
        if n < 2:
            break
        s, t = rng.sample(range(n), 2)
        (vs, ds), (vt, dt) = X.gens[s], X.gens[t]
        cands = _elements(A, vt, vs, ds - dt)
        if not cands:
            continue
        c = {rng.choice(cands): _coef(rng, F)}
        # d(g_s') = d(g_s) + d(g_t) c
        for y, e in D[t].items():
            prod = A.mul(e, c)
            if prod:
                entry = D[s].setdefault(y, {})
                axpy(entry, 1, prod, F)
                if not entry:
                    del D[s][y]
        # g_s = g_s' - g_t c in every column
        for col in D:
            a = col.get(s)
            if a:
                prod = A.mul(c, a)
                if prod:
                    entry = col.setdefault(t, {})
                    axpy(entry, -1, prod, F)
                    if not entry:
                        del col[t]
    return ProjComplex(A, X.gens, D, labels=X.labels, check=True)


def contractible(A: Algebra, v: int, degree: int) -> ProjComplex:
    """``P_v[1] -> P_v`` by the identity, generated in ``degree`` and ``degree - 1``."""
    P = ProjComplex.free(A, [(v, degree)])
    return cone({0: {0: {A.vertex_basis[v]: 1}}}, P, P)


def random_complex(A: Algebra, rng: random.Random, steps: int = 3,
                   gauge_steps: int = 3, contractible_prob: float = 0.5,
                   degree_range: int = 2) -> ProjComplex:
    """Iterated cones of random cocycles into shifted indecomposable projectives."""
    nv = A.nverts
    X = ProjComplex.free(A, [(rng.randrange(nv), rng.randint(-degree_range, degree_range))])
    degs = sorted(set(A.degrees))
    for _ in range(steps):
        w = rng.randrange(nv)
        src = rng.choice(X.gens)[1]
        e = src - rng.choice(degs) + rng.choice((0, 0, 1))
        Y = ProjComplex.free(A, [(w, e)])
        f = random_cocycle(X, w, e, rng)
        if f is None:
            X = Y.direct_sum(X) if rng.random() < 0.3 else X
            continue
        X = cone(f, X, Y)
    if rng.random() < contractible_prob:
        X = X.direct_sum(contractible(A, rng.randrange(nv), rng.randint(-degree_range, degree_range)))
    X = gauge(X, rng, gauge_steps)
    return X


def quotient_module(M: DgModule, gens: list[Vec]) -> DgModule:
    """``M / <gens>`` for a module with zero differential and homogeneous,
    vertex-pure generators."""
    if M.d:
        raise ValueError("quotients are only built for modules with zero differential")
    A, F = M.algebra, M.field
    ech = Echelon(F)
    queue = list(gens)
    while queue:
        x = queue.pop()
        if ech.add(x) is None:
            for b in range(A.dim):
                y = M.act_basis(x, b)
                if y and not ech.contains(y):
                    queue.append(y)
    keep = [i for i in range(M.dim) if i not in ech.rows]
    pos = {i: k for k, i in enumerate(keep)}
    act: dict[int, dict[int, Vec]] = {}
    for b, rows in M.act.items():
        out = {}
        for i, img in rows.items():
            if i not in pos:
                continue
            red, _ = ech.reduce(img)
            if red:
                out[pos[i]] = {pos[j]: c for j, c in red.items()}
        if out:
            act[b] = out
    return DgModule(A, [M.degrees[i] for i in keep], act, {}, [M.vertex[i] for i in keep],
                    [M.labels[i] for i in keep])


def random_module(A: Algebra, rng: random.Random, summands: int = 2,
                  relations: int = 2, degree_range: int = 1) -> DgModule:
    """A quotient of a random free module by random homogeneous elements."""
    P = ProjComplex.free(A, [(rng.randrange(A.nverts), rng.randint(-degree_range, degree_range))
                             for _ in range(summands)])
    M = P.to_module()
    blocks = defaultdict(list)
    for i in range(M.dim):
        blocks[(M.vertex[i], M.degrees[i])].append(i)
    keys = sorted(blocks)
    gens = []
    for _ in range(relations):
        idx = blocks[rng.choice(keys)]
        v = {i: _coef(rng, M.field) for i in idx if rng.random() < 0.7}
        if v:
            gens.append(v)
    return quotient_module(M, gens)
