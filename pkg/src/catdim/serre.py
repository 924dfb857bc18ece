"""Serre functor data: the Serre bimodule, its derived tensor powers, the
lower/upper Serre dimensions, the inverse Serre bimodule, entropy, and the
duality and Grothendieck-group cross-checks.

With generator ``G = A`` the Serre dimensions are the limits of
``-sup/m`` and ``-inf/m`` of the cohomology of the ``m``-fold derived tensor
power of ``A* = Hom_k(A, k)``.  Powers are computed as
``X_m = minimize(X_{m-1} (x)_A T)`` with ``T`` a right-projective model of
``A*``.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import Algebra, cached_enveloping, cached_opposite, sign
from .linalg import Matrix, inverse
from .modules import CohomologyProfile, DgModule, ModuleError
from .projective import MaxLengthExceeded, ProjComplex
from .resolve import BimoduleResolution, bimodule_resolution, minimal_resolution

Vec = dict


class NotSmooth(RuntimeError):
    """The algebra has no finite global dimension within the cap."""


# -- the Serre bimodule -------------------------------------------------------

def serre_bimodule(A: Algebra) -> DgModule:
    """``A* = Hom_k(A, k)`` as a right module over ``A^op (x) A``.

    With ``(phi.y)(z) = phi(y z)``, ``(x.phi)(z) = (-1)^{|x|(|phi|+|z|)} phi(z x)``
    and ``phi.(x (x) y) = (-1)^{|x||phi|} x phi y``; on the dual basis this is
    ``phi_i.(x (x) y) = (-1)^{|x|(|a_i|+1)} sum_j coef_i(y a_j x) phi_j``.
    """
    env = cached_enveloping(A)
    F, n = A.field, A.dim
    left, prods = A.left_products, A.products
    act: dict[int, dict[int, Vec]] = {}
    for j in range(n):
        for y, ya in left[j].items():
            for a2, c in ya.items():
                for x, p in prods[a2].items():
                    beta = x * n + y
                    rows = act.setdefault(beta, {})
                    dx = A.degrees[x]
                    for i, e in p.items():
                        s = sign(dx * (A.degrees[i] + 1))
                        row = rows.setdefault(i, {})
                        val = F.norm(row.get(j, 0) + s * c * e)
                        if val:
                            row[j] = val
                        else:
                            row.pop(j, None)
    nv = A.nverts
    vertex = [A.rv[i] * nv + A.lv[i] for i in range(n)]
    return DgModule(env, [-d for d in A.degrees], act, {}, vertex,
                    [f"{x}*" for x in A.labels])


def kill_left_radical(M: DgModule, A: Algebra) -> DgModule:
    """Bimodule whose left action factors through ``A/rad``.

    Used as a negative control: a valid bimodule that is not the Serre
    bimodule.
    """
    n = A.dim
    vb = set(A.vertex_basis)
    act = {beta: rows for beta, rows in M.act.items() if beta // n in vb}
    return DgModule(M.algebra, M.degrees, act, M.d, M.vertex, M.labels)


# -- tensor powers ------------------------------------------------------------

class TensorPowers:
    """Iterated derived tensor powers ``A (x) K (x) ... (x) K`` of a bimodule
    kernel ``K`` given as a right-projective :class:`ProjComplex`."""

    def __init__(self, algebra: Algebra, kernel: ProjComplex):
        if kernel.lam is None:
            raise ModuleError("kernel must be a bimodule complex")
        self.algebra = algebra
        self.kernel = kernel
        self._powers = [ProjComplex.regular(algebra)]
        self._profiles = [self._powers[0].cohomology()]
        self.timings: list[float] = [0.0]

    def apply(self, X: ProjComplex) -> ProjComplex:
        """``X (x)^L_A K`` for a perfect right complex ``X``."""
        return X.tensor(self.kernel).minimize()

    def power(self, m: int) -> ProjComplex:
        while len(self._powers) <= m:
            t0 = time.perf_counter()
            X = self.apply(self._powers[-1])
            self._powers.append(X)
            self._profiles.append(X.cohomology())
            self.timings.append(time.perf_counter() - t0)
        return self._powers[m]

    def profile(self, m: int) -> CohomologyProfile:
        self.power(m)
        return self._profiles[m]

    def sequence(self, m_max: int) -> list[tuple[int, int, int]]:
        out = []
        for m in range(m_max + 1):
            p = self.profile(m)
            out.append((m, p.inf, p.sup))
        return out


class SerreData(TensorPowers):
    """Serre bimodule of ``A``, its right-projective resolution and powers."""

    def __init__(self, A: Algebra, max_len: int | None = None, bimodule: DgModule | None = None):
        self.bimodule = bimodule if bimodule is not None else serre_bimodule(A)
        self.resolution: BimoduleResolution = bimodule_resolution(self.bimodule, A, max_len)
        super().__init__(A, self.resolution.complex)

    def serre(self, X: ProjComplex) -> ProjComplex:
        return self.apply(X)


def serre_power_profile(sd: TensorPowers, m: int) -> CohomologyProfile:
    return sd.profile(m)


# -- slopes -----------------------------------------------------------------

@dataclass(frozen=True)
class Pattern:
    period: int
    delta: int
    offset: int
    window: int

    @property
    def slope(self) -> Fraction:
        return Fraction(self.delta, self.period)


def detect_pattern(values: Sequence[int], period_max: int) -> Pattern | None:
    """Smallest period ``p`` with ``f(m+p) - f(m)`` constant on the final window.

    The window covers the last ``max(2p, len/2)`` indices.  ``offset`` is the
    first index from which the progression holds up to the end.
    """
    M = len(values) - 1
    for p in range(1, period_max + 1):
        window = max(2 * p, (M + 1) // 2)
        start = M - window + 1
        if start - p < 0:
            continue
        diffs = {values[m] - values[m - p] for m in range(start, M + 1)}
        if len(diffs) != 1:
            continue
        delta = diffs.pop()
        off = start
        while off - p - 1 >= 0 and values[off - 1] - values[off - 1 - p] == delta:
            off -= 1
        return Pattern(p, delta, off - p, window)
    return None


@dataclass
class DimensionReport:
    sequence: list[tuple[int, int, int]]
    lsdim: Fraction
    lsdim_flag: str
    usdim: Fraction
    usdim_flag: str
    lower_pattern: Pattern | None
    upper_pattern: Pattern | None
    characteristic: int = 0
    seconds: float = 0.0

    def to_json(self) -> dict:
        def pat(p):
            return None if p is None else {"period": p.period, "delta": p.delta,
                                           "offset": p.offset, "window": p.window}
        return {
            "sequence": [{"m": m, "inf": i, "sup": s} for m, i, s in self.sequence],
            "lsdim": {"value": str(self.lsdim), "flag": self.lsdim_flag, "pattern": pat(self.lower_pattern)},
            "usdim": {"value": str(self.usdim), "flag": self.usdim_flag, "pattern": pat(self.upper_pattern)},
            "characteristic": self.characteristic,
            "seconds": round(self.seconds, 3),
        }


def slopes_from_sequence(seq: Sequence[tuple[int, int, int]], period_max: int):
    """``(lsdim, flag, pattern, usdim, flag, pattern)`` from ``(m, inf, sup)``."""
    infs = [s[1] for s in seq]
    sups = [s[2] for s in seq]
    if any(isinstance(x, float) for x in infs + sups):
        raise ValueError("a power has zero cohomology; slopes undefined")
    M = len(seq) - 1
    out = []
    for vals in (sups, infs):
        pat = detect_pattern(vals, period_max)
        if pat is not None:
            out.append((-pat.slope, "exact_pattern", pat))
        else:
            q = min(period_max, M)
            out.append((Fraction(-(vals[M] - vals[M - q]), q), "estimate", None))
    (ls, lf, lp), (us, uf, up) = out
    return ls, lf, lp, us, uf, up


def estimate_dims(sd: TensorPowers, m_max: int = 24, period_max: int = 8) -> DimensionReport:
    """Lower/upper slopes of ``-sup_m`` and ``-inf_m`` over ``m <= m_max``."""
    if m_max < 2 * period_max:
        period_max = max(1, m_max // 2)
    t0 = time.perf_counter()
    seq = sd.sequence(m_max)
    ls, lf, lp, us, uf, up = slopes_from_sequence(seq, period_max)
    return DimensionReport(seq, ls, lf, us, uf, lp, up, sd.algebra.field.p,
                           time.perf_counter() - t0)


# -- Hom and derived tensor -------------------------------------------------

def as_projective(M, max_len: int | None = None) -> ProjComplex:
    """A projective model of a perfect module."""
    if isinstance(M, ProjComplex):
        return M
    return minimal_resolution(M, max_len).complex()


def as_module(N) -> DgModule:
    return N.to_module() if isinstance(N, ProjComplex) else N


def rhom(M, N, max_len: int | None = None) -> CohomologyProfile:
    """Degreewise dimensions of ``Hom^i(M, N)`` in the derived category."""
    return as_projective(M, max_len).hom_kcomplex(as_module(N)).profile()


def e_pm(A: Algebra, M1, M2, max_len: int | None = None):
    """``(e_-, e_+)``: inf and sup of ``RHom(M1, M2)``."""
    p = rhom(M1, M2, max_len)
    return p.inf, p.sup


def duality_check(A: Algebra, M, N, sd: SerreData | None = None,
                  details: bool = False):
    """``dim Hom^i(M, N) == dim Hom^{-i}(N, S M)`` for all ``i``."""
    sd = sd or SerreData(A)
    X = as_projective(M)
    lhs = rhom(X, N)
    rhs = rhom(as_projective(N), sd.apply(X))
    ok = lhs.dims == rhs.reversed().dims
    return (ok, lhs, rhs) if details else ok


# -- inverse Serre ------------------------------------------------------------

def inverse_kernel(T: ProjComplex) -> ProjComplex:
    """``Hom_A(T, A)`` for a right-projective bimodule complex ``T``, rewritten
    as a right-projective bimodule complex over the opposite algebra.  For a
    plain complex of projectives this is the dual complex of left modules.

    Generators ``k*`` are dual to those of ``T`` and have degree ``-|k|``.
    """
    A, F = T.algebra, T.field
    B = cached_opposite(A)
    n = T.ngens
    par = [d & 1 for _, d in T.gens]

    def deg_par(c: Vec) -> int:
        return A.degrees[next(iter(c))] & 1

    D: list[dict[int, Vec]] = [{} for _ in range(n)]
    for kp, col in enumerate(T.D):
        for k, c in col.items():
            s = -sign(par[k] + deg_par(c) * par[kp])
            D[k][kp] = {b: F.norm(s * x) for b, x in c.items()}
    if T.lam is None:
        return ProjComplex(B, [(v, -d) for v, d in T.gens], D, labels=[f"{x}*" for x in T.labels])
    lam: dict[int, list[dict[int, Vec]]] = {a: [{} for _ in range(n)] for a in range(A.dim)}
    for a, rows in T.lam.items():
        da = A.degrees[a] & 1
        for kp, row in enumerate(rows):
            for k, c in row.items():
                s = sign(da * par[k] + deg_par(c) * par[kp])
                lam[a][k][kp] = {b: F.norm(s * x) for b, x in c.items()}
    gens = [(v, -d) for v, d in T.gens]
    return ProjComplex(B, gens, D, lam, T.lv, [f"{x}*" for x in T.labels])


def inverse_serre_bimodule(sd: SerreData, cap: int | None = None) -> TensorPowers:
    """Powers of the inverse Serre functor, computed over the opposite algebra
    from ``A^! = RHom_A(A*, A)``.

    Raises :class:`NotSmooth` when the global dimension exceeds ``cap`` or the
    composite ``A* (x)^L A^!`` fails to reproduce ``A``.
    """
    from .bounds import AtLeast, gldim

    A = sd.algebra
    g = gldim(A, cap if cap is not None else A.dim + 10)
    if isinstance(g, AtLeast):
        raise NotSmooth(f"global dimension at least {g.value}")
    K = inverse_kernel(sd.kernel)
    composite = sd.kernel.tensor_kcomplex(K.to_module()).profile()
    if composite.dims != ProjComplex.regular(A).cohomology().dims:
        raise NotSmooth("A* (x) A^! is not quasi-isomorphic to A")
    return TensorPowers(cached_opposite(A), K)


# -- entropy ------------------------------------------------------------------

@dataclass
class EntropyReport:
    t_values: list[float]
    table: dict[float, list[float]]

    @property
    def final(self) -> dict[float, float]:
        return {t: v[-1] for t, v in self.table.items()}

    def to_json(self) -> dict:
        return {"t_values": self.t_values,
                "h": {str(t): v for t, v in self.table.items()},
                "final": {str(t): v[-1] for t, v in self.table.items()}}


def entropy_value(profile: CohomologyProfile, N: int, t: float) -> float:
    """``(1/N) ln sum_n dim H^n e^{-n t}``, evaluated stably."""
    terms = [(math.log(d) - n * t) for n, d in profile.dims.items()]
    top = max(terms)
    return (top + math.log(sum(math.exp(x - top) for x in terms))) / N


def entropy(sd: TensorPowers, t_values: Iterable[float], n_max: int) -> EntropyReport:
    ts = [float(t) for t in t_values]
    table = {t: [entropy_value(sd.profile(N), N, t) for N in range(1, n_max + 1)] for t in ts}
    return EntropyReport(ts, table)


# -- Grothendieck group shadow -------------------------------------------------

def coxeter_matrix(A: Algebra) -> Matrix:
    """``Phi = C C^{-T}`` acting on alternating dimension vectors (columns)."""
    C = Matrix.from_dense(A.signed_cartan_matrix(), A.field)
    return C @ inverse(C.transpose())


def coxeter_class(sd: SerreData, M) -> tuple[int, ...]:
    """Class of ``S(M)``; asserts it equals ``Phi`` applied to the class of ``M``."""
    X = as_projective(M)
    before = X.k0_vector()
    after = sd.apply(X).k0_vector()
    predicted = tuple(coxeter_matrix(sd.algebra).apply(list(before)))
    if tuple(after) != predicted:
        raise AssertionError(f"Coxeter prediction {predicted} != computed {after}")
    return tuple(after)
