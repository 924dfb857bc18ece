"""Exact Serre, Rouquier and diagonal dimension data for perfect derived
categories of finite-dimensional graded path algebras."""
from __future__ import annotations

__version__ = "0.1.0"

from .algebra import Algebra, Arrow, Quiver, path_algebra, tensor_product  # noqa: E402
from .bounds import ddim_interval, gldim, rouquier_interval  # noqa: E402
from .linalg import GF, QQ, Field  # noqa: E402
from .serre import SerreData, estimate_dims  # noqa: E402

__all__ = ["Algebra", "Arrow", "Field", "GF", "QQ", "Quiver", "SerreData", "ddim_interval",
           "estimate_dims", "gldim", "path_algebra", "rouquier_interval", "tensor_product",
           "__version__"]
