"""Right dg modules over graded algebras in explicit vector-space form.

A module has a homogeneous basis; ``act[b][i]`` is the sparse vector
``m_i * b`` for the algebra basis element ``b`` (missing entries are zero) and
``d[i]`` is ``d(m_i)``.  The algebra has zero differential, so the Leibniz rule
reads ``d(m b) = d(m) b``.  Left modules are right modules over the opposite
algebra, with ``a . n = (-1)^{|a||n|} n o a``.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import Algebra, cached_opposite, ground_algebra, sign
from .linalg import Echelon, Field, axpy, scale

Vec = dict


# -- cohomology profiles ----------------------------------------------------

@dataclass(frozen=True)
class CohomologyProfile:
    """Degreewise cohomology dimensions plus the alternating vertex class."""

    dims: dict[int, int]
    k0_vector: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "dims", {n: d for n, d in sorted(self.dims.items()) if d})

    @property
    def inf(self):
        return min(self.dims) if self.dims else math.inf

    @property
    def sup(self):
        return max(self.dims) if self.dims else -math.inf

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    @property
    def is_zero(self) -> bool:
        return not self.dims

    def euler(self) -> int:
        return sum(sign(n) * d for n, d in self.dims.items())

    def reversed(self) -> "CohomologyProfile":
        """Profile of the graded dual: degree ``n`` goes to ``-n``."""
        return CohomologyProfile({-n: d for n, d in self.dims.items()}, self.k0_vector)

    def shifted(self, k: int) -> "CohomologyProfile":
        """Profile of ``M[k]``."""
        s = sign(k)
        return CohomologyProfile({n - k: d for n, d in self.dims.items()},
                                 tuple(s * x for x in self.k0_vector))

    def to_json(self) -> dict:
        return {"dims": {str(n): d for n, d in self.dims.items()},
                "inf": _inf_json(self.inf), "sup": _inf_json(self.sup),
                "k0_vector": list(self.k0_vector)}


def _inf_json(x):
    if x == math.inf:
        return "+inf"
    if x == -math.inf:
        return "-inf"
    return x


class KComplex:
    """Finite complex of vector spaces on a homogeneous basis."""

    def __init__(self, degrees: Sequence[int], d: Sequence[Vec], field_: Field,
                 vertex: Sequence[int] | None = None, nverts: int = 0):
        self.degrees = list(degrees)
        self.d = list(d)
        self.field = field_
        self.vertex = list(vertex) if vertex is not None else None
        self.nverts = nverts

    def ranks(self) -> dict[int, int]:
        """Rank of ``d`` leaving each degree."""
        by_deg = defaultdict(list)
        for i, n in enumerate(self.degrees):
            if self.d[i]:
                by_deg[n].append(i)
        out = {}
        for n, idx in by_deg.items():
            ech = Echelon(self.field)
            for i in idx:
                ech.add(self.d[i])
            out[n] = ech.rank
        return out

    def square_zero(self) -> bool:
        F = self.field
        for v in self.d:
            acc: Vec = {}
            for j, c in v.items():
                axpy(acc, c, self.d[j], F)
            if acc:
                return False
        return True

    def profile(self) -> CohomologyProfile:
        dims = defaultdict(int)
        for n in self.degrees:
            dims[n] += 1
        r = self.ranks()
        h = {n: dims[n] - r.get(n, 0) - r.get(n - 1, 0) for n in dims}
        k0 = [0] * self.nverts
        if self.vertex is not None:
            for n, v in zip(self.degrees, self.vertex):
                k0[v] += sign(n)
        return CohomologyProfile(h, tuple(k0))


# -- dg modules -------------------------------------------------------------

class ModuleError(ValueError):
    pass


class DgModule:
    """Right dg module over ``algebra`` in vector form.

    ``vertex[i]`` is the vertex ``v`` with ``m_i e_v = m_i``; it is required
    for vertex-adapted algebras.
    """

    def __init__(self, algebra: Algebra, degrees: Sequence[int],
                 act: dict[int, dict[int, Vec]], d: dict[int, Vec] | None = None,
                 vertex: Sequence[int] | None = None, labels: Sequence[str] | None = None,
                 check: bool = False):
        self.algebra = algebra
        self.degrees = list(degrees)
        self.act = {b: {i: v for i, v in rows.items() if v} for b, rows in act.items()}
        self.d = {i: v for i, v in (d or {}).items() if v}
        self.vertex = list(vertex) if vertex is not None else None
        self.labels = list(labels) if labels is not None else [f"m{i}" for i in range(len(self.degrees))]
        if algebra.adapted and self.vertex is None:
            self.vertex = self._infer_vertices()
        if check:
            problems = self.validate()
            if problems:
                raise ModuleError("; ".join(problems[:5]))

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def field(self) -> Field:
        return self.algebra.field

    def __repr__(self):
        return f"DgModule(dim={self.dim}, over {self.algebra.name or '?'})"

    def _infer_vertices(self) -> list[int]:
        out = []
        for i in range(self.dim):
            found = None
            for v, b in enumerate(self.algebra.vertex_basis):
                img = self.act.get(b, {}).get(i)
                if img == {i: 1}:
                    found = v
                elif img:
                    raise ModuleError("basis is not vertex-homogeneous")
            if found is None:
                raise ModuleError(f"basis vector {i} is killed by every idempotent")
            out.append(found)
        return out

    # arithmetic
    def act_basis(self, x: Vec, b: int) -> Vec:
        F, rows, out = self.field, self.act.get(b), {}
        if not rows:
            return out
        for i, c in x.items():
            r = rows.get(i)
            if r:
                axpy(out, c, r, F)
        return out

    def act_elem(self, x: Vec, a: Vec) -> Vec:
        F, out = self.field, {}
        for b, c in a.items():
            axpy(out, c, self.act_basis(x, b), F)
        return out

    def apply_d(self, x: Vec) -> Vec:
        F, out = self.field, {}
        for i, c in x.items():
            r = self.d.get(i)
            if r:
                axpy(out, c, r, F)
        return out

    def degree_of(self, x: Vec) -> int | None:
        degs = {self.degrees[i] for i in x}
        if len(degs) > 1:
            raise ModuleError("inhomogeneous element")
        return degs.pop() if degs else None

    def validate(self) -> list[str]:
        """All module axioms, checked on basis elements."""
        A, F, problems = self.algebra, self.field, []
        for i in range(self.dim):
            if self.act_elem({i: 1}, A.unit) != {i: 1}:
                problems.append(f"unit does not act as identity on {self.labels[i]}")
        for b, rows in self.act.items():
            for i, img in rows.items():
                for j in img:
                    if self.degrees[j] != self.degrees[i] + A.degrees[b]:
                        problems.append("action does not respect degrees")
        for i, img in self.d.items():
            for j in img:
                if self.degrees[j] != self.degrees[i] + 1:
                    problems.append("differential is not of degree +1")
        if any(self.apply_d(v) for v in self.d.values()):
            problems.append("d^2 != 0")
        for i in range(self.dim):
            e = {i: 1}
            di = self.apply_d(e)
            for b in range(A.dim):
                eb = self.act_basis(e, b)
                if self.apply_d(eb) != self.act_basis(di, b):
                    problems.append(f"Leibniz rule fails for {self.labels[i]}*{A.labels[b]}")
                    break
                for b2 in range(A.dim):
                    lhs = self.act_basis(eb, b2)
                    rhs = self.act_elem(e, A.mul_basis(b, b2))
                    if lhs != rhs:
                        problems.append(
                            f"action not associative on ({self.labels[i]},{A.labels[b]},{A.labels[b2]})")
                        break
        return problems

    # structure
    def kcomplex(self) -> KComplex:
        return KComplex(self.degrees, [self.d.get(i, {}) for i in range(self.dim)], self.field,
                        self.vertex, self.algebra.nverts)

    def cohomology(self) -> CohomologyProfile:
        if self.vertex is None and self.algebra.adapted:
            raise ModuleError("missing vertex labels")
        return self.kcomplex().profile()

    def shift(self, k: int) -> "DgModule":
        """``M[k]``: degrees drop by ``k`` and ``d`` picks up ``(-1)^k``."""
        s = sign(k)
        return DgModule(self.algebra, [n - k for n in self.degrees], self.act,
                        {i: scale(v, s, self.field) for i, v in self.d.items()},
                        self.vertex, self.labels)

    def direct_sum(self, other: "DgModule") -> "DgModule":
        if other.algebra is not self.algebra:
            raise ModuleError("different algebras")
        off = self.dim
        act = {}
        for b in set(self.act) | set(other.act):
            rows = dict(self.act.get(b, {}))
            for i, v in other.act.get(b, {}).items():
                rows[i + off] = {j + off: c for j, c in v.items()}
            act[b] = rows
        d = dict(self.d)
        for i, v in other.d.items():
            d[i + off] = {j + off: c for j, c in v.items()}
        vertex = None if self.vertex is None else self.vertex + other.vertex
        return DgModule(self.algebra, self.degrees + other.degrees, act, d, vertex,
                        self.labels + other.labels)

    def with_action(self, b: int, rows: dict[int, Vec]) -> "DgModule":
        """Copy with the action of one basis element replaced (no validation)."""
        act = dict(self.act)
        act[b] = rows
        return DgModule(self.algebra, self.degrees, act, self.d, self.vertex, self.labels)


# -- constructions ------------------------------------------------------------

def regular_module(A: Algebra) -> DgModule:
    """``A`` as a right module over itself."""
    act = {b: {} for b in range(A.dim)}
    for i, row in enumerate(A.products):
        for j, p in row.items():
            act[j][i] = dict(p)
    vertex = A.rv if A.adapted else None
    return DgModule(A, A.degrees, act, {}, vertex, A.labels)


def simple_module(A: Algebra, v: int, degree: int = 0) -> DgModule:
    """One-dimensional simple at vertex ``v`` in cohomological degree ``degree``."""
    return DgModule(A, [degree], {A.vertex_basis[v]: {0: {0: 1}}}, {}, [v], [f"S{A.vertices[v]}"])


def zero_module(A: Algebra) -> DgModule:
    return DgModule(A, [], {}, {}, [] if A.adapted else None)


def dual(M: DgModule) -> DgModule:
    """Graded ``k``-dual, a right module over the opposite algebra.

    Uses ``(a.f)(m) = (-1)^{|a|(|f|+|m|)} f(m a)`` and
    ``(df)(m) = -(-1)^{|f|} f(dm)``.
    """
    A, F = M.algebra, M.field
    op = cached_opposite(A)
    act: dict[int, dict[int, Vec]] = {}
    for b, rows in M.act.items():
        db = A.degrees[b]
        out: dict[int, Vec] = defaultdict(dict)
        for j, img in rows.items():
            for i, c in img.items():
                # f_i o b = (-1)^{|b||e_i| + |b|} sum_j act[b][j][i] f_j
                s = sign(db * M.degrees[i] + db)
                out[i][j] = F.norm(s * c)
        act[b] = dict(out)
    d: dict[int, Vec] = defaultdict(dict)
    for j, img in M.d.items():
        for i, c in img.items():
            d[i][j] = F.norm(-sign(M.degrees[i]) * c)
    labels = [f"{x}*" for x in M.labels]
    return DgModule(op, [-n for n in M.degrees], act, dict(d), M.vertex, labels)


def tensor_over_A(M: DgModule, N: DgModule) -> DgModule:
    """Underived ``M (x)_A N`` as a complex of vector spaces.

    ``M`` is a right ``A``-module and ``N`` a left ``A``-module given as a
    right module over the opposite algebra.  Computed as the cokernel of
    ``m a (x) n - m (x) a n``.
    """
    A, F = M.algebra, M.field
    if N.algebra is not cached_opposite(A) and N.algebra.products != cached_opposite(A).products:
        raise ModuleError("N must be a module over the opposite algebra")
    if A.adapted:
        pairs = [(i, j) for i in range(M.dim) for j in range(N.dim) if M.vertex[i] == N.vertex[j]]
    else:
        pairs = [(i, j) for i in range(M.dim) for j in range(N.dim)]
    index = {p: k for k, p in enumerate(pairs)}
    degs = [M.degrees[i] + N.degrees[j] for i, j in pairs]

    def vec(mv: Vec, nv: Vec) -> Vec:
        out = {}
        for i, c in mv.items():
            for j, e in nv.items():
                k = index.get((i, j))
                if k is not None:
                    s = out.get(k, 0) + c * e
                    s = F.norm(s)
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    rel = defaultdict(lambda: Echelon(F))
    vb = set(A.vertex_basis) if A.adapted else set()
    for b in range(A.dim):
        if b in vb:
            continue
        db = A.degrees[b]
        for i in range(M.dim):
            mb = M.act_basis({i: 1}, b)
            for j in range(N.dim):
                bn = scale(N.act_basis({j: 1}, b), sign(db * N.degrees[j]), F)
                r = vec(mb, {j: 1})
                axpy(r, -1, vec({i: 1}, bn), F)
                if r:
                    rel[M.degrees[i] + N.degrees[j] + db].add(r)
    keep = [k for k in range(len(pairs)) if k not in rel[degs[k]].rows]
    pos = {k: t for t, k in enumerate(keep)}
    d = {}
    for t, k in enumerate(keep):
        i, j = pairs[k]
        img = vec(M.apply_d({i: 1}), {j: 1})
        axpy(img, sign(M.degrees[i]), vec({i: 1}, N.apply_d({j: 1})), F)
        if img:
            red, _ = rel[degs[k] + 1].reduce(img)
            if red:
                d[t] = {pos[x]: c for x, c in red.items()}
    G = ground_algebra(F)
    return DgModule(G, [degs[k] for k in keep], {0: {t: {t: 1} for t in range(len(keep))}}, d,
                    [0] * len(keep), [f"{M.labels[pairs[k][0]]}(x){N.labels[pairs[k][1]]}" for k in keep])


def restrict(M: DgModule, A: Algebra, side: str = "right") -> DgModule:
    """Underlying one-sided module of a bimodule over ``A^op (x) A``.

    ``side="right"`` gives a right ``A``-module; ``side="left"`` gives the
    left module as a right module over the opposite algebra, where
    ``m o a = m.(a (x) 1)``.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    n, nv, F = A.dim, A.nverts, A.field
    vb = set(A.vertex_basis)
    act: dict[int, dict[int, Vec]] = defaultdict(dict)
    for beta, rows in M.act.items():
        x, y = divmod(beta, n)
        if side == "right" and x in vb:
            key = y
        elif side == "left" and y in vb:
            key = x
        else:
            continue
        for i, img in rows.items():
            target = act[key].setdefault(i, {})
            axpy(target, 1, img, F)
    vertex = [v % nv if side == "right" else v // nv for v in M.vertex]
    B = A if side == "right" else cached_opposite(A)
    return DgModule(B, M.degrees, dict(act), M.d, vertex, M.labels)
