"""Exact arithmetic: rationals, sparse polynomials, rational functions, matrices."""

from fractions import Fraction

from .gens import HBAR, Family, GenIndex, aux_key, j_key, key_name, lam_key, t_key, w_key
from .linalg import inverse, nullspace, rank, rref, solve
from .matrix import ExactMatrix, ShapeError, matrix_kron, matrix_mul, matrix_trace
from .sparse import SparseMatrix
from .poly import Poly, as_fraction, fraction_str, leibniz, normalize, psum
from .ratfun import RationalFunction, ratfun_equal, ratfun_eval

ExactScalar = Fraction


def poly_add(x: Poly, y: Poly) -> Poly:
    return x + y


def poly_sub(x: Poly, y: Poly) -> Poly:
    return x - y


def poly_mul(x: Poly, y: Poly) -> Poly:
    return x * y


__all__ = [
    "ExactScalar", "Fraction", "Family", "GenIndex", "HBAR", "aux_key", "j_key", "key_name",
    "lam_key", "t_key", "w_key", "inverse", "nullspace", "rank", "rref", "solve",
    "ExactMatrix", "SparseMatrix", "ShapeError", "matrix_kron", "matrix_mul", "matrix_trace", "Poly",
    "as_fraction", "fraction_str", "leibniz", "normalize", "psum", "RationalFunction",
    "ratfun_equal", "ratfun_eval", "poly_add", "poly_sub", "poly_mul",
]
