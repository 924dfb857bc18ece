"""Exact scalar arithmetic and sparse linear algebra.

Vectors are ``dict[int, scalar]`` with no explicit zeros.  Scalars are Python
ints / ``Fraction`` over the rationals, or ints reduced mod ``p`` over a prime
field.  Every other module reduces its work to :class:`Echelon`.
"""
from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Iterable, Sequence

Vec = dict


class Field:
    """The rationals (``p == 0``) or the prime field with ``p`` elements."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p:
            if not (1 < p < 2**31) or not _is_prime(p):
                raise ValueError(f"{p} is not a prime below 2^31")
        self.p = p

    @property
    def char(self) -> int:
        return self.p

    def __call__(self, x) -> int | Fraction:
        if self.p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return int(x)

    def norm(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        if x == 1 or x == -1:
            return x
        r = Fraction(1) / x
        return r.numerator if r.denominator == 1 else r

    def spec(self) -> str:
        return f"p:{self.p}" if self.p else "q"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p else "QQ"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):  # deterministic below 3.4e14
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    """Parse ``"q"`` or ``"p:PRIME"``."""
    text = text.strip().lower()
    if text in ("q", "qq", "rationals"):
        return QQ
    if text.startswith("p:"):
        return Field(int(text[2:]))
    raise ValueError(f"unknown field spec {text!r}")


# -- sparse vectors ---------------------------------------------------------

def axpy(y: Vec, a, x: Vec, F: Field) -> Vec:
    """In place ``y += a*x``."""
    if not a:
        return y
    p = F.p
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if p:
            s %= p
        if s:
            y[k] = s
        else:
            y.pop(k, None)
    return y


def scale(x: Vec, a, F: Field) -> Vec:
    if not a:
        return {}
    if F.p:
        return {k: v * a % F.p for k, v in x.items()}
    return {k: v * a for k, v in x.items()}


def vsum(terms: Iterable[tuple[object, Vec]], F: Field) -> Vec:
    out: Vec = {}
    for a, x in terms:
        axpy(out, a, x, F)
    return out


# -- incremental elimination ------------------------------------------------

class Echelon:
    """Incrementally built semi-echelon basis of a subspace.

    Each stored row has a pivot equal to its smallest column, normalised to 1.
    With ``track=True`` every row remembers its expression in the inserted
    vectors (by tag), which yields kernels and solutions.
    """

    def __init__(self, F: Field, track: bool = False):
        self.F = F
        self.track = track
        self.rows: dict[int, Vec] = {}
        self.combos: dict[int, Vec] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, v: Vec, acc: Vec | None, full: bool):
        F, p, rows = self.F, self.F.p, self.rows
        heap = list(v)
        heapify(heap)
        while heap:
            c = heappop(heap)
            a = v.get(c)
            if not a:
                continue
            row = rows.get(c)
            if row is None:
                if not full:
                    return c
                continue
            for k, x in row.items():
                old = v.get(k, 0)
                s = old - a * x
                if p:
                    s %= p
                if s:
                    v[k] = s
                    if not old:
                        heappush(heap, k)
                else:
                    v.pop(k, None)
            if acc is not None:
                axpy(acc, -a, self.combos[c], F)
        return None

    def reduce(self, v: Vec) -> tuple[Vec, Vec | None]:
        """Fully reduce a copy of ``v``; return (residual, acc).

        ``v + sum(acc[t] * inserted[t]) == residual``.
        """
        v = dict(v)
        acc = {} if self.track else None
        self._reduce(v, acc, full=True)
        return v, acc

    def add(self, v: Vec, tag=None) -> Vec | None:
        """Insert ``v``.  Returns None if it was independent; otherwise the
        dependency among inserted tags (a kernel vector) when tracking, or {}.
        """
        v = dict(v)
        acc: Vec | None = None
        if self.track:
            acc = {tag: 1}
        lead = self._reduce(v, acc, full=False)
        if lead is None:
            return acc if acc is not None else {}
        s = self.F.inv(v[lead])
        if s != 1:
            v = scale(v, s, self.F)
            if acc is not None:
                acc = scale(acc, s, self.F)
        self.rows[lead] = v
        if acc is not None:
            self.combos[lead] = acc
        return None

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)[0]

    def express(self, v: Vec) -> Vec | None:
        """Coefficients (by tag) writing ``v`` in the inserted vectors."""
        if not self.track:
            raise ValueError("express() needs track=True")
        r, acc = self.reduce(v)
        if r:
            return None
        return scale(acc, -1, self.F)


def kernel_of_images(images: Sequence[Vec], F: Field) -> list[Vec]:
    """Kernel of the map sending basis vector ``i`` to ``images[i]``."""
    ech = Echelon(F, track=True)
    out = []
    for i, im in enumerate(images):
        dep = ech.add(im, i)
        if dep is not None:
            out.append(dep)
    return out


def rank_of(vectors: Iterable[Vec], F: Field) -> int:
    ech = Echelon(F)
    for v in vectors:
        ech.add(v)
    return ech.rank


# -- public matrix type -----------------------------------------------------

class Matrix:
    """Sparse matrix stored by rows; immutable by convention."""

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Vec] | None = None,
                 field: Field = QQ):
        self.nrows, self.ncols, self.field = nrows, ncols, field
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        clean = []
        for r in rows:
            cr = {}
            for j, x in r.items():
                if not 0 <= j < ncols:
                    raise ValueError(f"column {j} out of range")
                x = field(x)
                if x:
                    cr[j] = x
            clean.append(cr)
        self.rows = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], field: Field = QQ, ncols: int | None = None):
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, [{j: x for j, x in enumerate(r) if x} for r in data], field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ):
        return cls(n, n, [{i: 1} for i in range(n)], field)

    @classmethod
    def zero(cls, m: int, n: int, field: Field = QQ):
        return cls(m, n, None, field)

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, 0)

    def to_dense(self):
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    def columns(self) -> list[Vec]:
        cols: list[Vec] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                cols[j][i] = x
        return cols

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, self.columns(), self.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        F = self.field
        rows = [vsum(((x, other.rows[k]) for k, x in r.items()), F) for r in self.rows]
        return Matrix(self.nrows, other.ncols, rows, F)

    def apply(self, x: Sequence) -> list:
        F = self.field
        return [F.norm(sum(v * x[j] for j, v in r.items())) for r in self.rows]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape == other.shape
                and self.rows == other.rows)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.to_dense()})"


def rank(m: Matrix) -> int:
    return rank_of(m.rows, m.field)


def kernel_basis(m: Matrix) -> Matrix:
    """Matrix whose columns form a basis of ``{x : m x = 0}``."""
    vecs = kernel_of_images(m.columns(), m.field)
    return Matrix(len(vecs), m.ncols, vecs, m.field).transpose()


def solve(m: Matrix, b: Sequence) -> list | None:
    """A solution of ``m x = b``, or None when there is none."""
    F = m.field
    if len(b) != m.nrows:
        raise ValueError("right-hand side has wrong length")
    ech = Echelon(F, track=True)
    for j, col in enumerate(m.columns()):
        ech.add(col, j)
    coeffs = ech.express({i: F(x) for i, x in enumerate(b) if x})
    if coeffs is None:
        return None
    return [coeffs.get(j, 0) for j in range(m.ncols)]


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise ValueError("not square")
    n = m.nrows
    cols = []
    for i in range(n):
        x = solve(m, [1 if k == i else 0 for k in range(n)])
        if x is None:
            raise ZeroDivisionError("singular matrix")
        cols.append({j: v for j, v in enumerate(x) if v})
    return Matrix(n, n, cols, m.field).transpose()
