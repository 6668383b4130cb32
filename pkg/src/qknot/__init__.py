"""Exact tools for q-holonomic sequences and colored Jones polynomials."""

from .algebra import LaurentPoly, RatFunc, parse, parse_poly
from .qweyl import CommPoly, InhomRecurrence, OreOperator, op_mul

__version__ = "0.1.0"

__all__ = ["LaurentPoly", "RatFunc", "parse", "parse_poly", "OreOperator", "CommPoly", "InhomRecurrence", "op_mul"]
