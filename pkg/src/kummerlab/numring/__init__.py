"""Exact arithmetic in Q, quadratic rings of integers and the pure cubic tower over Z[w]."""

from .discriminants import (FundamentalDiscriminant, fundamental_decomposition, is_fundamental_discriminant,
                            pure_cubic_discriminant, s3_theorem_applies)
from .elements import EISENSTEIN, RATIONAL, NumberRing, QuadElem, RatElem, RingElement, TowerElem, norm, sqrt
from .finite import GF, FiniteField
from .primes import LocalPrime, PrecisionError, primes_above, primes_over_two, valuation

__all__ = [
    "EISENSTEIN", "RATIONAL", "NumberRing", "RingElement", "RatElem", "QuadElem", "TowerElem", "norm", "sqrt",
    "GF", "FiniteField", "LocalPrime", "PrecisionError", "primes_above", "primes_over_two", "valuation",
    "FundamentalDiscriminant", "fundamental_decomposition", "is_fundamental_discriminant",
    "pure_cubic_discriminant", "s3_theorem_applies",
]
