"""Exact arithmetic: polynomials, the field Q(mu), determinants and Smith forms."""

from .linalg import (
    DegreeBoundError,
    char_poly_rational,
    det_bipoly,
    det_integer,
    det_rational,
    inverse,
    matmul,
    nullspace,
)
from .poly import BiPoly, UniPoly, gcd_bipoly
from .ratfunc import QmuPoly, RatFunc
from .snf import DivisorLimitError, PolyMatrix, SNFResult, determinant_divisor, snf

__all__ = [
    "BiPoly",
    "DegreeBoundError",
    "DivisorLimitError",
    "PolyMatrix",
    "QmuPoly",
    "RatFunc",
    "SNFResult",
    "UniPoly",
    "char_poly_rational",
    "det_bipoly",
    "det_integer",
    "det_rational",
    "determinant_divisor",
    "gcd_bipoly",
    "inverse",
    "matmul",
    "nullspace",
    "snf",
]
