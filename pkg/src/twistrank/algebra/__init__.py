"""Exact arithmetic over Q: polynomials, factored rational functions, identity testing."""

from .parse import PolySyntaxError, parse_expr, parse_poly
from .poly import VARIABLES, MPoly, Rat, as_rat, is_squarefree, serialize_poly, upoly_gcd
from .ratfunc import (
    EXPANSION_THRESHOLD,
    DegreeBoundError,
    ExpansionError,
    FactoredRF,
    PoleError,
    eval_sum,
    parse_rf,
    rf_equal,
    rf_equal_exact,
    rf_eval,
    rf_signflip,
    rf_sum,
    serialize_rf,
)

__all__ = [
    "EXPANSION_THRESHOLD",
    "DegreeBoundError",
    "ExpansionError",
    "FactoredRF",
    "MPoly",
    "PoleError",
    "PolySyntaxError",
    "Rat",
    "VARIABLES",
    "as_rat",
    "eval_sum",
    "is_squarefree",
    "parse_expr",
    "parse_poly",
    "parse_rf",
    "rf_equal",
    "rf_equal_exact",
    "rf_eval",
    "rf_signflip",
    "rf_sum",
    "serialize_poly",
    "serialize_rf",
    "upoly_gcd",
]
