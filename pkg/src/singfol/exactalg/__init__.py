"""Exact scalars, sparse polynomials, parsing, linear algebra and sampling."""

from .gaussian import ONE, ZERO, I, GaussianRational
from .linalg import ExactMatrix, in_span, independent_rows, intersection_dim, matrix_rank
from .parse import ParseError, poly_parse, poly_print
from .poly import (
    DimensionError,
    Polynomial,
    jacobian,
    poly_arith,
    poly_eval,
    poly_partial,
)
from .sampling import sample_point, sample_points

__all__ = [
    "ONE", "ZERO", "I", "GaussianRational", "ExactMatrix", "in_span", "independent_rows",
    "intersection_dim", "matrix_rank", "ParseError", "poly_parse", "poly_print",
    "DimensionError", "Polynomial", "jacobian", "poly_arith", "poly_eval", "poly_partial",
    "sample_point", "sample_points",
]
