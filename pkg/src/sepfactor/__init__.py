"""Reducibility and factorization of X*f(X) - Y*g(Y) for additive f, g.

Exact computer algebra over GF(p^k), p odd: the scaling criterion deciding
reducibility, the explicit three-factor (or two-factor) factorization, the
additive-polynomial layer behind it, and an independent Kronecker
substitution oracle that re-derives every factorization by brute force.
"""

from .gf import Elem, FieldError, FieldSpec, ParseError, find_irreducible, is_square, sqrt
from .unipoly import UniPoly, factor, gcd, parse_unipoly, roots_in_extension
from .additive import (
    AdditivePoly,
    critical_values,
    even_part,
    fhat,
    is_morse,
    parse_additive,
    xf_build,
)
from .sepfact import (
    BiPoly,
    Factorization,
    Verdict,
    decide,
    delta_squared,
    divided_difference,
    expand_difference,
    factor_separated,
    matches_scaling,
    parse_bipoly,
)
from .oracle import (
    GuardrailError,
    OracleReport,
    decompose_all,
    is_irreducible_bivariate,
    kronecker_factor,
    verify_theorem_pair,
)

__version__ = "0.1.0"

__all__ = [
    "AdditivePoly",
    "BiPoly",
    "Elem",
    "Factorization",
    "FieldError",
    "FieldSpec",
    "GuardrailError",
    "OracleReport",
    "ParseError",
    "UniPoly",
    "Verdict",
    "critical_values",
    "decide",
    "decompose_all",
    "delta_squared",
    "divided_difference",
    "even_part",
    "expand_difference",
    "factor",
    "factor_separated",
    "fhat",
    "find_irreducible",
    "gcd",
    "is_irreducible_bivariate",
    "is_morse",
    "is_square",
    "kronecker_factor",
    "matches_scaling",
    "parse_additive",
    "parse_bipoly",
    "parse_unipoly",
    "roots_in_extension",
    "sqrt",
    "verify_theorem_pair",
    "xf_build",
]
