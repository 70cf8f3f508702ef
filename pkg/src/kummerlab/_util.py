"""Small integer helpers shared across modules."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, inf


def v_p(x, p: int):
    """p-adic valuation of an int or Fraction; inf for zero."""
    if isinstance(x, Fraction):
        if x == 0:
            return inf
        return v_p(x.numerator, p) - v_p(x.denominator, p)
    x = int(x)
    if x == 0:
        return inf
    x = abs(x)
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def json_rational(q: Fraction):
    """Integers stay integers; anything else becomes an 'n/d' string."""
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of a nonzero integer by trial division."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("0 has no finite factorization")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]
