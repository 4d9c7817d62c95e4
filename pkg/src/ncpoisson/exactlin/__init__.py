"""Exact arithmetic substrate: rational matrices, sparse multivariate
polynomials, and 2-D lattice polygon geometry."""

from .matrix import QMatrix, SingularMatrixError, mat_inverse, mat_rank_exact
from .mpoly import ArityError, MPoly, mpoly_arith
from .polygon import (
    LatticePolygon,
    ZeroPolynomialError,
    convex_hull,
    interior_lattice_points,
    newton_polygon,
)

__all__ = [
    "QMatrix",
    "SingularMatrixError",
    "mat_rank_exact",
    "mat_inverse",
    "MPoly",
    "ArityError",
    "mpoly_arith",
    "LatticePolygon",
    "ZeroPolynomialError",
    "convex_hull",
    "newton_polygon",
    "interior_lattice_points",
]
