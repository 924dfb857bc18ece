"""Bounded complexes of finitely generated projective modules.

A :class:`ProjComplex` is a twisted complex ``(+)_g g.e_{v_g}A`` on generators
``g`` of vertex ``v_g`` and degree ``|g|``, with differential
``d(g_s) = sum_t g_t . D[s][t]`` where ``D[s][t]`` lies in
``e_{v_t} A e_{v_s}``.  Optionally it also carries a left ``A``-action
``a . g_k = sum_j g_j . lam[a][k][j]`` making it a bimodule that is projective
on the right; such objects model derived tensor functors.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Sequence

from .algebra import Algebra, sign
from .linalg import Field, axpy, scale
from .modules import CohomologyProfile, DgModule, KComplex, ModuleError

Vec = dict


class MaxLengthExceeded(RuntimeError):
    """A resolution did not terminate within the allowed length."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def _add_into(target: dict, key, a, vec: Vec, F: Field):
    cur = dict(target.get(key) or {})
    axpy(cur, a, vec, F)
    if cur:
        target[key] = cur
    else:
        target.pop(key, None)


def unit_inverse(A: Algebra, u: Vec, v: int) -> Vec:
    """Inverse of ``u = c e_v + n`` in ``e_v A e_v`` with ``n`` nilpotent."""
    F = A.field
    e = A.vertex_basis[v]
    c = u.get(e, 0)
    if not c:
        raise ZeroDivisionError("not a unit")
    ci = F.inv(c)
    n = dict(u)
    n.pop(e)
    x = scale(n, -ci, F)  # u = c (e - x)
    out, power = {e: ci}, {e: ci}
    for _ in range(A.dim + 1):
        power = A.mul(power, x)
        if not power:
            return out
        axpy(out, 1, power, F)
    raise ArithmeticError("radical part is not nilpotent")


class ProjComplex:
    """Twisted complex of indecomposable projectives (see module docstring)."""

    def __init__(self, algebra: Algebra, gens: Sequence[tuple[int, int]],
                 D: Sequence[dict[int, Vec]] | None = None,
                 lam: dict[int, list[dict[int, Vec]]] | None = None,
                 lv: Sequence[int] | None = None, labels: Sequence[str] | None = None,
                 check: bool = False):
        if not algebra.adapted:
            raise ModuleError("projective complexes need a vertex-adapted algebra")
        self.algebra = algebra
        self.gens = [tuple(g) for g in gens]
        n = len(self.gens)
        self.D = [{t: c for t, c in x.items() if c} for x in D] if D is not None else [{} for _ in range(n)]
        if len(self.D) != n:
            raise ModuleError("differential has wrong number of columns")
        self.lam = lam
        self.lv = list(lv) if lv is not None else None
        self.labels = list(labels) if labels is not None else [f"g{i}" for i in range(n)]
        if check:
            problems = self.validate()
            if problems:
                raise ModuleError("; ".join(problems[:5]))

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def ngens(self) -> int:
        return len(self.gens)

    @property
    def is_bimodule(self) -> bool:
        return self.lam is not None

    def __repr__(self):
        return f"ProjComplex({self.ngens} generators over {self.algebra.name or '?'})"

    # -- constructors ---------------------------------------------------
    @classmethod
    def free(cls, A: Algebra, gens: Sequence[tuple[int, int]]) -> "ProjComplex":
        return cls(A, gens)

    @classmethod
    def regular(cls, A: Algebra) -> "ProjComplex":
        """``A_A`` as ``(+)_v e_v A``."""
        return cls(A, [(v, 0) for v in range(A.nverts)],
                   labels=[f"P{x}" for x in A.vertices])

    @classmethod
    def diagonal(cls, A: Algebra) -> "ProjComplex":
        """``A`` as a bimodule, free on the right on the vertex idempotents."""
        n = A.nverts
        lam = {}
        for b in range(A.dim):
            rows = [{} for _ in range(n)]
            # b . e_v = e_{lv(b)} . b when rv(b) = v
            rows[A.rv[b]] = {A.lv[b]: {b: 1}}
            lam[b] = rows
        return cls(A, [(v, 0) for v in range(n)], None, lam, list(range(n)),
                   [f"P{x}" for x in A.vertices])

    # -- vector-space views --------------------------------------------
    def kbasis(self) -> list[tuple[int, int]]:
        A = self.algebra
        return [(g, b) for g, (v, _) in enumerate(self.gens) for b in A.by_lv(v)]

    def kcomplex(self) -> KComplex:
        A, F = self.algebra, self.field
        basis = self.kbasis()
        index = {p: i for i, p in enumerate(basis)}
        degs = [self.gens[g][1] + A.degrees[b] for g, b in basis]
        d = []
        for g, b in basis:
            out = {}
            for t, c in self.D[g].items():
                for b2, x in A.mul(c, {b: 1}).items():
                    k = index[(t, b2)]
                    s = F.norm(out.get(k, 0) + x)
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
            d.append(out)
        return KComplex(degs, d, F, [A.rv[b] for _, b in basis], A.nverts)

    def to_module(self) -> DgModule:
        """The underlying right dg module in vector form."""
        A = self.algebra
        kc = self.kcomplex()
        basis = self.kbasis()
        index = {p: i for i, p in enumerate(basis)}
        act: dict[int, dict[int, Vec]] = defaultdict(dict)
        for i, (g, b) in enumerate(basis):
            for x, p in A.products[b].items():
                act[x][i] = {index[(g, b2)]: c for b2, c in p.items()}
        labels = [f"{self.labels[g]}.{A.labels[b]}" for g, b in basis]
        return DgModule(A, kc.degrees, dict(act), dict(enumerate(kc.d)), kc.vertex, labels)

    def cohomology(self) -> CohomologyProfile:
        return self.kcomplex().profile()

    def k0_vector(self) -> tuple[int, ...]:
        return self.kcomplex().profile().k0_vector

    # -- checks ---------------------------------------------------------
    def validate(self) -> list[str]:
        A, F = self.algebra, self.field
        problems = []
        for s, col in enumerate(self.D):
            vs, ds = self.gens[s]
            for t, c in col.items():
                vt, dt = self.gens[t]
                for b in c:
                    if A.lv[b] != vt or A.rv[b] != vs or A.degrees[b] != ds + 1 - dt:
                        problems.append(f"entry D[{s}][{t}] is not homogeneous of the right type")
                        break
        for s in range(self.ngens):
            acc: dict[int, Vec] = {}
            for t, c in self.D[s].items():
                for u, c2 in self.D[t].items():
                    _add_into(acc, u, 1, A.mul(c2, c), F)
            if acc:
                problems.append(f"d^2 != 0 on generator {s}")
        if self.lam is not None:
            problems.extend(self._validate_bimodule())
        return problems

    def _lam_elem(self, a: Vec, k: int) -> dict[int, Vec]:
        """Column ``k`` of ``lam(a)`` for an algebra element ``a``."""
        F, out = self.field, {}
        for b, c in a.items():
            for j, x in self.lam[b][k].items():
                _add_into(out, j, c, x, F)
        return out

    def _validate_bimodule(self) -> list[str]:
        A, F = self.algebra, self.field
        problems = []
        n = self.ngens
        for k in range(n):
            if self._lam_elem(A.unit, k) != {k: {A.vertex_basis[self.gens[k][0]]: 1}}:
                problems.append(f"unit does not act trivially on generator {k}")
        for a in range(A.dim):
            for k in range(n):
                for j, c in self.lam[a][k].items():
                    for b in c:
                        if (A.lv[b] != self.gens[j][0] or A.rv[b] != self.gens[k][0]
                                or A.degrees[b] != A.degrees[a] + self.gens[k][1] - self.gens[j][1]):
                            problems.append("left action entry has the wrong type")
        for a in range(A.dim):
            for a2 in range(A.dim):
                prod = A.mul_basis(a, a2)
                for k in range(n):
                    lhs = self._lam_elem(prod, k)
                    rhs: dict[int, Vec] = {}
                    for k1, c1 in self.lam[a2][k].items():
                        for k2, c2 in self.lam[a][k1].items():
                            _add_into(rhs, k2, 1, A.mul(c2, c1), F)
                    if lhs != rhs:
                        problems.append(f"left action not associative at ({A.labels[a]},{A.labels[a2]})")
                        break
        for a in range(A.dim):
            s = sign(A.degrees[a])
            for k in range(n):
                lhs: dict[int, Vec] = {}
                for k1, c1 in self.lam[a][k].items():
                    for t, c2 in self.D[k1].items():
                        _add_into(lhs, t, 1, A.mul(c2, c1), F)
                rhs: dict[int, Vec] = {}
                for t, c1 in self.D[k].items():
                    for t2, c2 in self.lam[a][t].items():
                        _add_into(rhs, t2, s, A.mul(c2, c1), F)
                if lhs != rhs:
                    problems.append(f"differential not left-linear at {A.labels[a]}")
                    break
        return problems

    # -- operations ------------------------------------------------------
    def shift(self, k: int) -> "ProjComplex":
        """``X[k]``."""
        F, A = self.field, self.algebra
        s = sign(k)
        D = [{t: scale(c, s, F) for t, c in col.items()} for col in self.D]
        lam = None
        if self.lam is not None:
            lam = {a: [{j: scale(c, sign(k * A.degrees[a]), F) for j, c in row.items()}
                       for row in rows] for a, rows in self.lam.items()}
        return ProjComplex(A, [(v, d - k) for v, d in self.gens], D, lam, self.lv, self.labels)

    def direct_sum(self, other: "ProjComplex") -> "ProjComplex":
        off = self.ngens
        D = self.D + [{t + off: c for t, c in col.items()} for col in other.D]
        lam = lv = None
        if self.lam is not None and other.lam is not None:
            lam = {a: self.lam[a] + [{j + off: c for j, c in r.items()} for r in other.lam[a]]
                   for a in self.lam}
            lv = self.lv + other.lv
        return ProjComplex(self.algebra, self.gens + other.gens, D, lam, lv,
                           self.labels + other.labels)

    def tensor(self, T: "ProjComplex") -> "ProjComplex":
        """``self (x)_A T`` for a bimodule ``T``; the result is a right complex.

        ``d(g (x) k) = d(g) (x) k + (-1)^{|g|} g (x) d(k)`` with the coefficient
        of ``d(g)`` moved across the tensor sign by the left action of ``T``.
        """
        if T.lam is None:
            raise ModuleError("right factor must be a bimodule")
        A, F = self.algebra, self.field
        by_lv = defaultdict(list)
        for k, u in enumerate(T.lv):
            by_lv[u].append(k)
        pairs = [(g, k) for g, (v, _) in enumerate(self.gens) for k in by_lv[v]]
        index = {p: i for i, p in enumerate(pairs)}
        gens = [(T.gens[k][0], self.gens[g][1] + T.gens[k][1]) for g, k in pairs]
        D: list[dict[int, Vec]] = []
        for g, k in pairs:
            col: dict[int, Vec] = {}
            for t, c in self.D[g].items():
                for k2, x in T._lam_elem(c, k).items():
                    _add_into(col, index[(t, k2)], 1, x, F)
            s = sign(self.gens[g][1])
            for k2, x in T.D[k].items():
                _add_into(col, index[(g, k2)], s, x, F)
            D.append(col)
        labels = [f"{self.labels[g]}(x){T.labels[k]}" for g, k in pairs]
        return ProjComplex(A, gens, D, labels=labels)

    def minimize(self) -> "ProjComplex":
        """Cancel invertible differential entries one pair at a time.

        Each cancellation of ``d(s) = t.u + ...`` with ``u`` a unit replaces
        ``D[g][x]`` by ``D[g][x] - D[s][x] u^{-1} D[g][t]`` and drops ``s, t``;
        the result is homotopy equivalent to the input.
        """
        if self.lam is not None:
            raise ModuleError("minimize works on right complexes only")
        A, F = self.algebra, self.field
        cols = [{t: dict(c) for t, c in col.items() if c} for col in self.D]
        rows: list[set[int]] = [set() for _ in range(self.ngens)]
        for s, col in enumerate(cols):
            for t in col:
                rows[t].add(s)
        alive = [True] * self.ngens
        vb = A.vertex_basis

        def is_unit(s, t, c):
            vs = self.gens[s][0]
            return vs == self.gens[t][0] and c.get(vb[vs], 0) != 0

        while True:
            cands = []
            for s in range(self.ngens):
                if not alive[s]:
                    continue
                for t, c in cols[s].items():
                    if is_unit(s, t, c):
                        cands.append(((len(rows[t]) - 1) * (len(cols[s]) - 1), s, t))
            if not cands:
                break
            cands.sort()
            for _, s, t in cands:
                if not (alive[s] and alive[t]):
                    continue
                c = cols[s].get(t)
                if c is None or not is_unit(s, t, c):
                    continue
                uinv = unit_inverse(A, c, self.gens[s][0])
                src = [(x, cx) for x, cx in cols[s].items() if x != t]
                for g in list(rows[t]):
                    if g == s:
                        continue
                    w = A.mul(uinv, cols[g][t])
                    colg = cols[g]
                    for x, cx in src:
                        upd = A.mul(cx, w)
                        if not upd:
                            continue
                        cur = colg.get(x, {})
                        axpy(cur, -1, upd, F)
                        if cur:
                            colg[x] = cur
                            rows[x].add(g)
                        else:
                            colg.pop(x, None)
                            rows[x].discard(g)
                for dead in (s, t):
                    for x in cols[dead]:
                        rows[x].discard(dead)
                    for g in rows[dead]:
                        cols[g].pop(dead, None)
                    cols[dead] = {}
                    rows[dead] = set()
                    alive[dead] = False
        keep = [i for i in range(self.ngens) if alive[i]]
        pos = {i: n for n, i in enumerate(keep)}
        D = [{pos[t]: c for t, c in cols[i].items()} for i in keep]
        return ProjComplex(A, [self.gens[i] for i in keep], D,
                           labels=[self.labels[i] for i in keep])

    def has_unit_entries(self) -> bool:
        vb = self.algebra.vertex_basis
        for s, col in enumerate(self.D):
            for t, c in col.items():
                v = self.gens[s][0]
                if v == self.gens[t][0] and c.get(vb[v], 0):
                    return True
        return False

    def hom_kcomplex(self, N: DgModule) -> KComplex:
        """``Hom_A(self, N)`` with ``(Df)(g) = d f(g) - (-1)^i f(d g)``."""
        A, F = self.algebra, self.field
        if N.algebra is not A and N.algebra.products != A.products:
            raise ModuleError("modules over different algebras")
        by_v = defaultdict(list)
        for j, v in enumerate(N.vertex):
            by_v[v].append(j)
        basis = [(g, j) for g, (v, _) in enumerate(self.gens) for j in by_v[v]]
        index = {p: i for i, p in enumerate(basis)}
        degs = [N.degrees[j] - self.gens[g][1] for g, j in basis]
        into = [[] for _ in range(self.ngens)]  # into[t] = [(s, D[s][t])]
        for s, col in enumerate(self.D):
            for t, c in col.items():
                into[t].append((s, c))
        d = []
        for (g, j), i in zip(basis, degs):
            out = {}
            for j2, c in N.d.get(j, {}).items():
                out[index[(g, j2)]] = c
            s = -sign(i)
            for g2, c in into[g]:
                for j2, x in N.act_elem({j: 1}, c).items():
                    k = index[(g2, j2)]
                    val = F.norm(out.get(k, 0) + s * x)
                    if val:
                        out[k] = val
                    else:
                        out.pop(k, None)
            d.append(out)
        return KComplex(degs, d, F)

    def tensor_kcomplex(self, N: DgModule) -> KComplex:
        """``self (x)_A N`` for a left module ``N`` given over the opposite algebra."""
        A, F = self.algebra, self.field
        by_v = defaultdict(list)
        for j, v in enumerate(N.vertex):
            by_v[v].append(j)
        basis = [(g, j) for g, (v, _) in enumerate(self.gens) for j in by_v[v]]
        index = {p: i for i, p in enumerate(basis)}
        degs = [self.gens[g][1] + N.degrees[j] for g, j in basis]
        d = []
        for g, j in basis:
            out: Vec = {}
            for t, c in self.D[g].items():
                # c . n = sum_b c_b (-1)^{|b||n|} n o b
                for b, cb in c.items():
                    s = sign(A.degrees[b] * N.degrees[j])
                    for j2, x in N.act_basis({j: 1}, b).items():
                        k = index[(t, j2)]
                        val = F.norm(out.get(k, 0) + s * cb * x)
                        if val:
                            out[k] = val
                        else:
                            out.pop(k, None)
            s = sign(self.gens[g][1])
            for j2, x in N.d.get(j, {}).items():
                k = index[(g, j2)]
                val = F.norm(out.get(k, 0) + s * x)
                if val:
                    out[k] = val
                else:
                    out.pop(k, None)
            d.append(out)
        return KComplex(degs, d, F)


def cone(f: dict[int, dict[int, Vec]], X: ProjComplex, Y: ProjComplex) -> ProjComplex:
    """Cone of a chain map ``f: X -> Y`` given by ``f(g_s) = sum_t h_t . f[s][t]``.

    Generators are ``Y`` followed by ``X[1]``, with
    ``d(x) = -d_X(x) + f(x)`` on the shifted copy.
    """
    F = X.field
    off = Y.ngens
    D = [dict(c) for c in Y.D]
    for s in range(X.ngens):
        col = {t + off: scale(c, -1, F) for t, c in X.D[s].items()}
        for t, c in f.get(s, {}).items():
            _add_into(col, t, 1, c, F)
        D.append(col)
    gens = Y.gens + [(v, d - 1) for v, d in X.gens]
    return ProjComplex(X.algebra, gens, D, labels=Y.labels + [f"{x}[1]" for x in X.labels])
