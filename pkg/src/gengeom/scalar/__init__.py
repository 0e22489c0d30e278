"""Exact coefficient field, polynomial and rational-function arithmetic, matrices."""
from .field import ScalarField, sf
from .gaussrat import GaussRat, coeff, coeff_str, to_coeff
from .matrix import FieldMatrix
from .parser import parse_expr
from .poly import Poly, poly_str

__all__ = [
    "GaussRat",
    "coeff",
    "coeff_str",
    "to_coeff",
    "Poly",
    "poly_str",
    "ScalarField",
    "sf",
    "FieldMatrix",
    "parse_expr",
]
