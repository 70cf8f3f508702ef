"""Primes of the supported rings, with valuations, residue maps and lifts.

A :class:`LocalPrime` is everything Tate's algorithm needs to know about a
discrete valuation ring: the valuation, a uniformizer, the residue field and
maps between the ring and that field.  Elements may carry denominators as long
as they are P-integral.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import inf

from .. import _util
from .elements import EISENSTEIN, NumberRing, QuadElem, RingElement
from .finite import GF, FFElem, FiniteField

INITIAL_PRECISION = 64
PRECISION_CEILING = 1 << 16


class PrecisionError(RuntimeError):
    """Hensel precision ceiling hit; a nonzero element always has finite valuation."""


@lru_cache(maxsize=256)
def _hensel_root(t: int, n: int, p: int, r0: int, bits: int) -> int:
    """Root of X^2 - tX - n in Z_p congruent to r0 mod p, modulo p^bits."""
    mod = p**bits
    r = r0
    prec = 1
    while prec < bits:
        prec = min(2 * prec, bits)
        m = p**prec
        f = (r * r - t * r - n) % m
        df = (2 * r - t) % m
        r = (r - f * pow(df, -1, m)) % m
    assert (r * r - t * r - n) % mod == 0
    return r


@dataclass(frozen=True, eq=False)
class LocalPrime:
    ring: NumberRing
    p: int
    splitting: str  # "split", "inert" or "ramified"
    uniformizer: RingElement
    e: int
    f: int
    which: int | None = None
    precision: int = INITIAL_PRECISION
    _root: int | None = field(default=None, repr=False)

    def __eq__(self, other):
        return (isinstance(other, LocalPrime) and self.ring == other.ring and self.p == other.p
                and self.splitting == other.splitting and self.which == other.which)

    def __hash__(self):
        return hash((self.ring, self.p, self.splitting, self.which))

    @property
    def pi(self) -> RingElement:
        return self.uniformizer

    @property
    def label(self) -> str:
        tag = {"split": f"split{self.which}", "inert": "inert", "ramified": "ramified"}[self.splitting]
        return f"P({self.p},{tag})"

    # residue field -----------------------------------------------------
    @property
    def residue_field(self) -> FiniteField:
        return _residue_field(self)

    # valuation ----------------------------------------------------------
    def valuation(self, x) -> int | float:
        x = self.ring.coerce(x)
        if x.is_zero():
            return inf
        kind = self.ring.kind
        if kind == "rational":
            return _util.v_p(x.value, self.p)
        if kind == "tower":
            return min(3 * _inert_val(c, 2) + i for i, c in enumerate(x.c))
        if self.splitting == "inert":
            return min(_util.v_p(x.x, self.p), _util.v_p(x.y, self.p))
        if self.splitting == "ramified":
            return _util.v_p(x.norm(), self.p)
        return self._split_val(x)[0]

    def _embed(self, x: QuadElem, bits: int):
        """(A, k, D') with x = A / (p^k D') in Z_p, A known modulo p^bits."""
        D = x.common_denominator()
        k = _util.v_p(D, self.p)
        Dp = D // self.p**k
        xi, yi = int(x.x * D), int(x.y * D)
        t, n = self.ring.theta_relation
        r = _hensel_root(t, n, self.p, self._root, bits)
        return (xi + yi * r) % self.p**bits, k, Dp

    def _split_val(self, x: QuadElem):
        bits = self.precision
        while bits <= PRECISION_CEILING:
            A, k, Dp = self._embed(x, bits)
            if A != 0:
                return _util.v_p(A, self.p) - k, A, k, Dp
            bits *= 2
        raise PrecisionError(f"valuation of {x} did not stabilize below {PRECISION_CEILING} digits")

    def is_integral(self, x) -> bool:
        return self.valuation(x) >= 0

    # residue map ----------------------------------------------------------
    def residue(self, x) -> FFElem:
        x = self.ring.coerce(x)
        F = self.residue_field
        if x.is_zero():
            return F.zero()
        v = self.valuation(x)
        if v < 0:
            raise ValueError(f"{x} is not integral at {self.label}")
        if v > 0:
            return F.zero()
        kind = self.ring.kind
        if kind == "rational":
            q = x.value
            return F(q.numerator * pow(q.denominator, -1, self.p))
        if kind == "tower":
            return _inert_residue(x.c[0], F)
        if self.splitting == "split":
            _, A, k, Dp = self._split_val(x)
            return F((A // self.p**k) * pow(Dp, -1, self.p))
        if self.splitting == "inert":
            return _inert_residue(x, F)
        # ramified: theta = r mod P for the double root r of its minimal polynomial
        z, d = _split_denominator(x, self.p)
        return F((int(z.x) + int(z.y) * self._root) * pow(d, -1, self.p))

    def lift(self, a: FFElem) -> RingElement:
        """A ring element with the given residue."""
        kind = self.ring.kind
        if a.field.k == 1:
            return self.ring.coerce(a.code)
        coeffs = a.coeffs()
        if kind == "tower":
            return self.ring.coerce(EISENSTEIN(coeffs[0], coeffs[1]))
        return self.ring(coeffs[0], coeffs[1])

    def reduce_all(self, xs) -> list:
        return [self.residue(x) for x in xs]

    def divide_by_pi(self, x, k: int = 1) -> RingElement:
        return self.ring.coerce(x) / (self.uniformizer ** k)


def _inert_val(x: QuadElem, p: int):
    if x.is_zero():
        return inf
    return min(_util.v_p(x.x, p), _util.v_p(x.y, p))


def _split_denominator(x: QuadElem, p: int):
    """(z, d) with x = z / d, z integral and d prime to p.

    Only valid when x is integral at every prime above p, which holds for
    P-integral x when P is the unique prime above p.
    """
    D = x.common_denominator()
    k = _util.v_p(D, p)
    z = x * (D // p**k) * p**k
    z = QuadElem(z.ring, Fraction(z.x) / p**k, Fraction(z.y) / p**k)
    if not z.is_integral():
        raise ValueError(f"{x} is not integral above {p}")
    return z, D // p**k


def _inert_residue(x: QuadElem, F: FiniteField) -> FFElem:
    z, d = _split_denominator(x, F.p)
    inv = pow(d, -1, F.p)
    return F.from_coeffs([int(z.x) * inv, int(z.y) * inv])


def _residue_field(P: LocalPrime) -> FiniteField:
    if P.ring.kind == "tower":
        return _inert_field(EISENSTEIN, 2)
    if P.splitting == "inert" and P.ring.kind == "quadratic":
        return _inert_field(P.ring, P.p)
    return GF(P.p)


@lru_cache(maxsize=None)
def _inert_field(ring: NumberRing, p: int) -> FiniteField:
    t, n = ring.theta_relation
    # theta satisfies X^2 - tX - n
    return FiniteField(p, modulus=((-n) % p, (-t) % p, 1))


# construction ----------------------------------------------------------------

def primes_above(ring: NumberRing, p: int) -> list[LocalPrime]:
    """All primes of ``ring`` above the rational prime ``p``."""
    if not _util.is_prime(p):
        raise ValueError(f"{p} is not prime")
    kind = ring.kind
    if kind == "rational":
        return [LocalPrime(ring, p, "inert", ring(p), 1, 1)]
    if kind == "tower":
        if p != 2:
            raise NotImplementedError("tower rings only support the prime above 2")
        return [LocalPrime(ring, 2, "ramified", ring.gen(), 3, 2)]
    if kind != "quadratic":
        raise ValueError(f"unsupported ring kind {kind!r}")
    t, n = ring.theta_relation
    roots = [r for r in range(p) if (r * r - t * r - n) % p == 0]
    if len(roots) == 2:
        return [LocalPrime(ring, p, "split", ring(p), 1, 1, which=i + 1, _root=r)
                for i, r in enumerate(roots)]
    if not roots:
        return [LocalPrime(ring, p, "inert", ring(p), 1, 2)]
    return [LocalPrime(ring, p, "ramified", _ramified_uniformizer(ring, p), 2, 1, _root=roots[0])]


def _ramified_uniformizer(ring: NumberRing, p: int) -> QuadElem:
    """Prefer a generator of P itself (norm +-p), so dividing by it keeps
    integrality at the other primes; fall back to an element of valuation 1."""
    t, n = ring.theta_relation
    for size in range(1, 25):
        for x in range(0, size + 1):
            for y in (size - x, x - size) if x != size else (0,):
                if y == 0:
                    continue
                z = QuadElem(ring, Fraction(x), Fraction(y))
                if abs(z.norm()) == p:
                    return z
    s = ring.sqrt_m()
    pi = s + 1 if (p == 2 and ring.m % 4 == 3) else s
    assert _util.v_p(pi.norm(), p) == 1
    return pi


def primes_over_two(ring: NumberRing) -> list[LocalPrime]:
    return primes_above(ring, 2)


def valuation(x, P: LocalPrime):
    return P.valuation(x)
