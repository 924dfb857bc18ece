"""Homological algebra facade: cohomology, duals, tensor products,
resolutions, Hom complexes and minimization in one namespace."""
from __future__ import annotations

from .algebra import ground_algebra
from .modules import (CohomologyProfile, DgModule, KComplex, ModuleError, dual,
                      regular_module, simple_module, tensor_over_A, zero_module)
from .projective import MaxLengthExceeded, ProjComplex, cone
from .resolve import (BimoduleResolution, Resolution, bimodule_resolution,
                      minimal_resolution, projective_dimension)
from .serre import as_module, as_projective, inverse_kernel, rhom

__all__ = [
    "BimoduleResolution", "CohomologyProfile", "DgModule", "KComplex", "MaxLengthExceeded",
    "ModuleError", "ProjComplex", "Resolution", "bimodule_resolution", "cohomology", "cone",
    "derived_tensor", "dual", "dual_complex", "ground_complex", "minimal_resolution", "minimize",
    "projective_dimension", "regular_module", "rhom", "simple_module", "tensor_over_A",
    "zero_module",
]


def cohomology(m) -> CohomologyProfile:
    return m.cohomology()


def dual_complex(X: ProjComplex) -> ProjComplex:
    """``Hom_A(X, A)`` as a complex of projectives over the opposite algebra."""
    return inverse_kernel(X)


def derived_tensor(M, N: DgModule) -> CohomologyProfile:
    """``M (x)^L_A N`` with ``N`` a module over the opposite algebra."""
    return as_projective(M).tensor_kcomplex(as_module(N)).profile()


def minimize(m):
    """Cancel invertible differential components.

    Projective complexes are minimized over the algebra; modules over the
    ground field are minimized as complexes of vector spaces.  Other modules
    are returned through a projective model when one exists.
    """
    if isinstance(m, ProjComplex):
        return m.minimize()
    A = m.algebra
    if A.dim == 1:
        X = ProjComplex(A, [(0, d) for d in m.degrees],
                        [{t: {0: c} for t, c in m.d.get(i, {}).items()} for i in range(m.dim)],
                        labels=m.labels)
        return X.minimize().to_module()
    if m.d:
        raise ModuleError("minimize needs a projective complex or a module over the ground field")
    return m


def ground_complex(degrees, d, field) -> DgModule:
    """A complex of vector spaces as a module over the ground field."""
    G = ground_algebra(field)
    n = len(degrees)
    return DgModule(G, list(degrees), {0: {i: {i: 1} for i in range(n)}}, d, [0] * n)
