"""Exact arithmetic: rationals, Q(sqrt D), polynomials, rational functions, F_q."""

from .factor import factor_rationals, is_irreducible_certificate, low_degree_factors, rational_roots
from .finitefield import FqElement, FqField, fq_char
from .poly import (
    Poly,
    discriminant,
    poly_coprime_base,
    poly_gcd,
    poly_xgcd,
    resultant,
    squarefree_decomposition,
    squarefree_part,
    valuation,
)
from .ratfunc import RatFunc, as_ratfunc
from .scalars import MixedFieldError, QuadExt, Rat, conj, rat, rat_sqrt, sqrt_quadext
from .syntax import SyntaxParseError, format_poly, format_scalar, parse_poly, parse_scalar

__all__ = [
    "FqElement",
    "FqField",
    "MixedFieldError",
    "Poly",
    "QuadExt",
    "Rat",
    "RatFunc",
    "SyntaxParseError",
    "as_ratfunc",
    "conj",
    "discriminant",
    "factor_rationals",
    "format_poly",
    "format_scalar",
    "fq_char",
    "is_irreducible_certificate",
    "low_degree_factors",
    "parse_poly",
    "parse_scalar",
    "poly_coprime_base",
    "poly_gcd",
    "poly_xgcd",
    "rat",
    "rat_sqrt",
    "rational_roots",
    "resultant",
    "sqrt_quadext",
    "squarefree_decomposition",
    "squarefree_part",
    "valuation",
]
