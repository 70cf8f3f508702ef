"""Quadratic fundamental discriminants and pure cubic field discriminants."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .. import _util


@dataclass(frozen=True)
class FundamentalDiscriminant:
    value: int
    epsilon: int
    nu: int
    odd_primes: tuple[int, ...]


def _squarefree(n: int) -> bool:
    return n != 0 and all(_util.v_p(n, q) == 1 for q in _util.prime_factors(n))


def fundamental_decomposition(d: int) -> FundamentalDiscriminant | None:
    """Write d = eps * (-1 / p1...pr) * 2^nu * p1...pr, or return None.

    The symbol (-1 / n) is the sign (-1)^((n-1)/2) for odd n > 0.
    """
    if d in (0, 1):
        return None
    nu = _util.v_p(d, 2)
    odd = abs(d) >> nu
    if nu not in (0, 2, 3) or not (odd == 1 or _squarefree(odd)):
        return None
    primes = tuple(_util.prime_factors(odd)) if odd > 1 else ()
    chi = -1 if odd % 4 == 3 else 1
    sign = 1 if d > 0 else -1
    eps = sign * chi
    if nu == 0 and eps != 1:
        return None
    if nu == 2 and eps != -1:
        return None
    return FundamentalDiscriminant(d, eps, nu, primes)


def is_fundamental_discriminant(d: int) -> bool:
    return fundamental_decomposition(d) is not None


def _squarefree_split(m: int) -> tuple[int, int]:
    """|m| = a * b^2 * c^3 with a, b squarefree coprime; returns (a, b) and rejects cube factors."""
    a = b = 1
    for q in _util.prime_factors(m):
        k = _util.v_p(m, q) % 3
        if k == 1:
            a *= q
        elif k == 2:
            b *= q
    return a, b


def pure_cubic_discriminant(m: int) -> tuple[int, int]:
    """(d_K, f) for K = Q(m^(1/3)); cube factors of m are removed first."""
    if m == 0:
        raise ValueError("m must be nonzero")
    a, b = _squarefree_split(m)
    if a * b == 1:
        raise ValueError(f"{m} is a cube; Q({m}^(1/3)) is not a cubic field")
    assert gcd(a, b) == 1
    rad = a * b
    f = rad if (a * a - b * b) % 9 == 0 else 3 * rad
    return -3 * f * f, f


def s3_theorem_applies(m: int) -> bool:
    """True when the pure cubic field has d_K = -3 f^2 with f even."""
    return pure_cubic_discriminant(m)[1] % 2 == 0
