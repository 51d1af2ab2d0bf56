"""Exact scalars, rational functions and linear algebra."""

from .linalg import (
    LinearSolution,
    determinant,
    identity,
    in_span,
    kernel,
    matmul,
    matvec,
    rank,
    row_basis,
    rref,
    solve_linear,
    span_intersection,
    span_sum,
)
from .parse import ParseError, parse_ratfunc
from .rat import GaussRat, Rat, format_rat, parse_rat, to_rat
from .ratfunc import (
    ChartMismatch,
    DomainError,
    RatFunc,
    format_poly,
    normalize,
    partial_derivative,
    poly_ring,
    ratfuncs,
)

__all__ = [
    "ChartMismatch", "DomainError", "GaussRat", "LinearSolution", "ParseError", "Rat", "RatFunc",
    "determinant", "format_poly", "format_rat", "identity", "in_span", "kernel", "matmul", "matvec",
    "normalize", "parse_rat", "parse_ratfunc", "partial_derivative", "poly_ring", "rank", "ratfuncs",
    "row_basis", "rref", "solve_linear", "span_intersection", "span_sum", "to_rat",
]
