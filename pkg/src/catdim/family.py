"""Families over the affine line: complexes and quiver representations with
entries in ``k[t]``, their specializations, jump loci and semicontinuity.

Ranks at a point are read off a Smith normal form over ``k[t]``: the
transforming matrices are unimodular, hence invertible at every point, so
the rank at ``t0`` is the number of diagonal entries not vanishing there.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .algebra import Algebra, sign
from .linalg import QQ, Field, Matrix, rank
from .modules import CohomologyProfile, DgModule


class NotHereditary(ValueError):
    pass


# -- polynomials --------------------------------------------------------------

class Poly:
    """Univariate polynomial over a :class:`Field`; ``coeffs[i]`` multiplies ``t^i``."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable = (), field_: Field = QQ):
        c = [field_(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = c
        self.field = field_

    @classmethod
    def const(cls, x, field_: Field = QQ) -> "Poly":
        return cls([x], field_)

    @classmethod
    def t(cls, field_: Field = QQ) -> "Poly":
        return cls([0, 1], field_)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.field)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def _coerce(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly.const(other, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [0] * (n - len(self.coeffs))
        b = other.coeffs + [0] * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)], self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.coeffs], self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self or not other:
            return Poly([], self.field)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Poly(out, self.field)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        q = [0] * max(len(r) - len(other.coeffs) + 1, 0)
        inv = F.inv(other.coeffs[-1])
        while len(r) >= len(other.coeffs) and any(r):
            shift = len(r) - len(other.coeffs)
            c = F.norm(r[-1] * inv)
            q[shift] = c
            for i, y in enumerate(other.coeffs):
                r[shift + i] = F.norm(r[shift + i] - c * y)
            while r and not r[-1]:
                r.pop()
        return Poly(q, F), Poly(r, F)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if not self:
            return self
        inv = self.field.inv(self.coeffs[-1])
        return Poly([x * inv for x in self.coeffs], self.field)

    def __call__(self, x):
        F, acc = self.field, 0
        x = F(x)
        for c in reversed(self.coeffs):
            acc = F.norm(acc * x + c)
        return acc

    def __repr__(self):
        if not self:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*t" + (f"^{i}" if i > 1 else ""))
        return " + ".join(reversed(terms))

    def to_sympy(self):
        t = sympy.Symbol("t")
        return sum(sympy.Rational(str(c)) * t**i for i, c in enumerate(self.coeffs))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def roots_and_factors(p: Poly) -> tuple[list, list[str]]:
    """Roots in the base field and the remaining irreducible factors."""
    if p.degree <= 0:
        return [], []
    t = sympy.Symbol("t")
    F = p.field
    if F.p:
        sp = sympy.Poly([int(c) for c in reversed(p.coeffs)], t, modulus=F.p)
    else:
        sp = sympy.Poly(p.to_sympy(), t, domain="QQ")
    _, facs = sp.factor_list()
    roots, other = [], []
    for f, _mult in facs:
        if f.degree() == 1:
            a, b = f.all_coeffs()
            r = -sympy.Rational(b) / sympy.Rational(a)
            if F.p:
                roots.append(int(r.p * pow(int(r.q), -1, F.p)) % F.p)
            else:
                roots.append(Fraction(int(r.p), int(r.q)))
        else:
            other.append(str(f.as_expr()))
    return sorted(set(roots)), other


# -- polynomial matrices --------------------------------------------------------

@dataclass
class PolyMatrix:
    rows: int
    cols: int
    entries: list[list[Poly]]

    @classmethod
    def from_lists(cls, data, field_: Field = QQ, shape=None) -> "PolyMatrix":
        """Entries may be Poly, scalars, or coefficient lists."""
        def conv(x):
            if isinstance(x, Poly):
                return x
            if isinstance(x, (list, tuple)):
                return Poly(x, field_)
            return Poly.const(x, field_)
        ent = [[conv(x) for x in row] for row in data]
        r = len(ent) if shape is None else shape[0]
        c = (len(ent[0]) if ent else 0) if shape is None else shape[1]
        if not ent:
            ent = [[Poly([], field_) for _ in range(c)] for _ in range(r)]
        return cls(r, c, ent)

    @classmethod
    def zero(cls, r: int, c: int, field_: Field = QQ) -> "PolyMatrix":
        return cls(r, c, [[Poly([], field_) for _ in range(c)] for _ in range(r)])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        F = self._field()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Poly([], F)
                for k in range(self.cols):
                    if self.entries[i][k] and other.entries[k][j]:
                        acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.rows, other.cols, out)

    def _field(self) -> Field:
        for row in self.entries:
            for x in row:
                return x.field
        return QQ

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def evaluate(self, t0) -> Matrix:
        F = self._field()
        return Matrix.from_dense([[x(t0) for x in row] for row in self.entries], F, ncols=self.cols)

    def smith_diagonal(self) -> list[Poly]:
        """Nonzero invariant factors (monic, each dividing the next)."""
        F = self._field()
        a = [[x for x in row] for row in self.entries]
        m, n = self.rows, self.cols
        diag = []
        k = 0
        while k < min(m, n):
            piv = None
            for i in range(k, m):
                for j in range(k, n):
                    if a[i][j] and (piv is None or a[i][j].degree < a[piv[0]][piv[1]].degree):
                        piv = (i, j)
            if piv is None:
                break
            i, j = piv
            a[k], a[i] = a[i], a[k]
            for row in a:
                row[k], row[j] = row[j], row[k]
            done = False
            while not done:
                done = True
                p = a[k][k]
                for i in range(k + 1, m):
                    if a[i][k]:
                        q, r = divmod(a[i][k], p)
                        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
                        if r:
                            a[k], a[i] = a[i], a[k]
                            done = False
                            break
                if not done:
                    continue
                for j in range(k + 1, n):
                    if a[k][j]:
                        q, r = divmod(a[k][j], p)
                        for row in a:
                            row[j] = row[j] - q * row[k]
                        if r:
                            for row in a:
                                row[k], row[j] = row[j], row[k]
                            done = False
                            break
            diag.append(a[k][k].monic())
            k += 1
        # enforce divisibility: diag(a, b) ~ diag(gcd, lcm)
        changed = True
        while changed:
            changed = False
            for i in range(len(diag)):
                for j in range(i + 1, len(diag)):
                    if diag[j] % diag[i]:
                        g = poly_gcd(diag[i], diag[j])
                        l = (diag[i] * diag[j]) // g
                        diag[i], diag[j] = g, l.monic()
                        changed = True
        return diag


# -- complexes ------------------------------------------------------------------

class PolyComplex:
    """Complex of free ``k[t]``-modules: ``ranks[i]`` and ``d[i]: C^i -> C^{i+1}``."""

    def __init__(self, ranks: dict[int, int], d: dict[int, PolyMatrix], field_: Field = QQ,
                 check: bool = True):
        self.ranks = {i: r for i, r in ranks.items()}
        self.field = field_
        self.d = {}
        for i in self.ranks:
            src, tgt = self.ranks[i], self.ranks.get(i + 1, 0)
            m = d.get(i)
            if m is None:
                m = PolyMatrix.zero(tgt, src, field_)
            if (m.rows, m.cols) != (tgt, src):
                raise ValueError(f"d^{i} has shape {(m.rows, m.cols)}, expected {(tgt, src)}")
            self.d[i] = m
        if check:
            for i in self.ranks:
                if i + 1 in self.ranks and not (self.d[i + 1] @ self.d[i]).is_zero():
                    raise ValueError(f"d^{i + 1} d^{i} is not identically zero")

    def _rank_at(self, i: int, t0) -> int:
        m = self.d.get(i)
        if m is None or m.rows == 0 or m.cols == 0:
            return 0
        return rank(m.evaluate(t0))

    def specialize(self, t0) -> CohomologyProfile:
        dims = {i: r - self._rank_at(i, t0) - self._rank_at(i - 1, t0) for i, r in self.ranks.items()}
        return CohomologyProfile(dims)

    def invariant_factors(self, i: int) -> list[Poly]:
        m = self.d.get(i)
        if m is None or m.rows == 0 or m.cols == 0:
            return []
        return m.smith_diagonal()

    def generic_profile(self) -> CohomologyProfile:
        dims = {}
        for i, r in self.ranks.items():
            dims[i] = r - len(self.invariant_factors(i)) - len(self.invariant_factors(i - 1))
        return CohomologyProfile(dims)


def specialize(pc: PolyComplex, t0) -> CohomologyProfile:
    return pc.specialize(t0)


@dataclass
class JumpLocus:
    degree: int
    generic_dim: int
    points: dict            # point -> dim H^i there
    symbolic: list[str]     # irreducible non-linear factors where rank drops

    def to_json(self) -> dict:
        return {"degree": self.degree, "generic_dim": self.generic_dim,
                "points": {str(p): d for p, d in sorted(self.points.items())},
                "symbolic_factors": self.symbolic}


def jump_locus(pc: PolyComplex, i: int, box=None) -> JumpLocus:
    """Points where ``dim H^i`` exceeds its generic value.

    ``box = (lo, hi)`` restricts rational points to that closed interval.
    """
    generic = pc.generic_profile().dims.get(i, 0)
    cand, symbolic = set(), []
    for j in (i, i - 1):
        for f in pc.invariant_factors(j):
            roots, other = roots_and_factors(f)
            cand.update(roots)
            symbolic.extend(other)
    pts = {}
    for r in cand:
        if box is not None and not pc.field.p and not (box[0] <= r <= box[1]):
            continue
        dim = pc.specialize(r).dims.get(i, 0)
        if dim != generic:
            pts[r] = dim
    return JumpLocus(i, generic, pts, sorted(set(symbolic)))


# -- module families ---------------------------------------------------------------

class ModuleFamily:
    """Representation of an acyclic quiver with polynomial arrow matrices.

    ``dims[v]`` is the dimension at vertex ``v``; ``maps[arrow]`` is a
    ``dims[target] x dims[source]`` :class:`PolyMatrix`.
    """

    def __init__(self, algebra: Algebra, dims: dict[str, int], maps: dict[str, PolyMatrix]):
        q = algebra.quiver
        if q is None or algebra.relations or not q.is_acyclic() or algebra.graded:
            raise NotHereditary("families need an ungraded acyclic quiver without relations")
        self.algebra = algebra
        self.dims = {v: int(dims.get(v, 0)) for v in q.vertices}
        self.maps = {}
        F = algebra.field
        for a in q.arrows:
            m = maps.get(a.name)
            shape = (self.dims[a.target], self.dims[a.source])
            if m is None:
                m = PolyMatrix.zero(*shape, F)
            if (m.rows, m.cols) != shape:
                raise ValueError(f"matrix for {a.name} has the wrong shape")
            self.maps[a.name] = m

    def specialize(self, t0) -> DgModule:
        """The right module at ``t0``: arrows act on column vectors."""
        A, q, F = self.algebra, self.algebra.quiver, self.algebra.field
        offs, n = {}, 0
        for v in q.vertices:
            offs[v] = n
            n += self.dims[v]
        vertex = [0] * n
        for vi, v in enumerate(q.vertices):
            for k in range(self.dims[v]):
                vertex[offs[v] + k] = vi
        arrow_idx = {A.labels.index(a.name): a for a in q.arrows}
        act: dict[int, dict[int, dict]] = {}
        for b, a in arrow_idx.items():
            M = self.maps[a.name].evaluate(t0)
            rows = {}
            for k in range(self.dims[a.source]):
                col = {offs[a.target] + r: M[r, k] for r in range(M.nrows) if M[r, k]}
                if col:
                    rows[offs[a.source] + k] = col
            act[b] = rows
        for v in range(len(q.vertices)):
            act[v] = {offs[q.vertices[v]] + k: {offs[q.vertices[v]] + k: 1}
                      for k in range(self.dims[q.vertices[v]])}
        # longer paths: b = a * c with a an arrow, so m.b = (m.a).c
        pending = [b for b in range(A.dim) if b not in act]
        while pending:
            rest = []
            for b in pending:
                split = next(((a, c) for a in arrow_idx for c in act
                              if A.products[a].get(c) == {b: 1}), None)
                if split is None:
                    rest.append(b)
                    continue
                a, c = split
                rows = {}
                for i, col in act[a].items():
                    out: dict = {}
                    for j, x in col.items():
                        for k, y in act[c].get(j, {}).items():
                            out[k] = F.norm(out.get(k, 0) + x * y)
                    out = {k: y for k, y in out.items() if y}
                    if out:
                        rows[i] = out
                act[b] = rows
            if len(rest) == len(pending):
                raise ValueError("basis element is not a product of arrows")
            pending = rest
        return DgModule(A, [0] * n, {b: r for b, r in act.items() if r}, {}, vertex)


def family_rhom(M: ModuleFamily, N: ModuleFamily) -> PolyComplex:
    """``Hom(M_t, N_t)`` complex ``(+)_v Hom(M_v, N_v) -> (+)_a Hom(M_s, N_t)``,
    ``f -> f_t M_a - N_a f_s``, in degrees 0 and 1."""
    if M.algebra is not N.algebra and M.algebra.quiver != N.algebra.quiver:
        raise ValueError("families over different algebras")
    A, q, F = M.algebra, M.algebra.quiver, M.algebra.field
    c0, off0 = [], {}
    for v in q.vertices:
        off0[v] = len(c0)
        c0.extend((v, r, c) for r in range(N.dims[v]) for c in range(M.dims[v]))
    c1, off1 = [], {}
    for a in q.arrows:
        off1[a.name] = len(c1)
        c1.extend((a.name, r, c) for r in range(N.dims[a.target]) for c in range(M.dims[a.source]))
    d = PolyMatrix.zero(len(c1), len(c0), F)
    for a in q.arrows:
        s, t = a.source, a.target
        Ma, Na = M.maps[a.name], N.maps[a.name]
        ms, nt = M.dims[s], N.dims[t]
        for r in range(nt):
            for c in range(ms):
                row = off1[a.name] + r * ms + c
                # (f_t M_a)[r][c] = sum_k f_t[r][k] M_a[k][c]
                for k in range(M.dims[t]):
                    col = off0[t] + r * M.dims[t] + k
                    d.entries[row][col] = d.entries[row][col] + Ma.entries[k][c]
                # (N_a f_s)[r][c] = sum_k N_a[r][k] f_s[k][c]
                for k in range(N.dims[s]):
                    col = off0[s] + k * ms + c
                    d.entries[row][col] = d.entries[row][col] - Na.entries[r][k]
    return PolyComplex({0: len(c0), 1: len(c1)}, {0: d}, F)


# -- semicontinuity -------------------------------------------------------------

@dataclass
class ScanVerdict:
    status: str
    c: object
    upper_set: list           # points with sup >= c
    lower_set: list           # points with inf <= c
    jump_points: list
    mismatches: list = field(default_factory=list)
    euler: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status, "c": str(self.c),
                "sup_ge_c": [str(x) for x in self.upper_set],
                "inf_le_c": [str(x) for x in self.lower_set],
                "jump_points": [str(x) for x in self.jump_points],
                "mismatches": self.mismatches,
                "euler": {str(k): v for k, v in self.euler.items()}}


def semicontinuity_scan(pc: PolyComplex, sample_points: Sequence, c=0) -> ScanVerdict:
    """Check that ``{sup >= c}`` and ``{inf <= c}`` are either the whole sample
    or contained in the jump set, and that every sample point off the jump
    set has the generic profile."""
    pts = [pc.field(x) for x in sample_points]
    generic = pc.generic_profile()
    jumps = set()
    for i in pc.ranks:
        jumps.update(jump_locus(pc, i).points)
    profiles = {p: pc.specialize(p) for p in pts}
    up = [p for p in pts if profiles[p].sup >= c]
    lo = [p for p in pts if profiles[p].inf <= c]
    mismatches = [str(p) for p in pts if p not in jumps and profiles[p].dims != generic.dims]
    ok = not mismatches
    for s in (up, lo):
        if len(s) != len(pts) and not set(s) <= jumps:
            ok = False
    euler = {p: profiles[p].euler() for p in pts}
    return ScanVerdict("PASS" if ok else "FAIL", c, up, lo, sorted(jumps), mismatches, euler)
