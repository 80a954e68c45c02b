"""Exact arithmetic kernel: rationals, polynomials, rational functions, series."""
from .poly import BivariatePoly, Rational, UniPoly, as_rational
from .ratfunc import RatFunc, RatFuncMatrix, berkowitz, charpoly
from .resultant import (
    discriminant,
    discriminant_uni,
    divides_z,
    gcd_z,
    pquo_z,
    prem_z,
    resultant,
    resultant_uni,
    squarefree_z,
)
from .series import TruncatedSeries

poly_resultant = resultant

__all__ = [
    "BivariatePoly",
    "RatFunc",
    "RatFuncMatrix",
    "Rational",
    "TruncatedSeries",
    "UniPoly",
    "as_rational",
    "berkowitz",
    "charpoly",
    "discriminant",
    "discriminant_uni",
    "divides_z",
    "gcd_z",
    "poly_resultant",
    "pquo_z",
    "prem_z",
    "resultant",
    "resultant_uni",
    "squarefree_z",
]
