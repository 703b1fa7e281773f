"""Exact polynomial kernel: monomial orders, Buchberger, ideal operations."""
from .factor import Factorization, factor_squarefree, squarefree_part
from .groebner import buchberger, normal_form, s_polynomial
from .ideals import (Ideal, dimension, eliminate, fresh_variable, groebner_basis,
                     ideal_membership, radical_membership, reduce, saturate)
from .orders import MonomialOrder, block_order, default_order, grevlex, lex
from .polynomial import (Monomial, Polynomial, PolynomialParseError,
                         parse_polynomial)

__all__ = [
    "Monomial", "Polynomial", "PolynomialParseError", "parse_polynomial",
    "MonomialOrder", "grevlex", "lex", "block_order", "default_order",
    "buchberger", "normal_form", "s_polynomial",
    "Ideal", "reduce", "groebner_basis", "ideal_membership", "radical_membership",
    "eliminate", "saturate", "dimension", "fresh_variable",
    "Factorization", "factor_squarefree", "squarefree_part",
]
