"""The effective model of the sign involution at a prime, and its fixed-scheme fiber.

With d = val(2, a1, a3) the equation 2y + a1 x + a3 = 0 divided by pi^d reduces
to a nonzero line 2_d y + a1_d x + a3_d = 0 on the closed fiber.  The order-two
group scheme generated by the involution is constant, multiplicative or
infinitesimal according to whether d = 0, 2_d is a unit, or neither.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .localtate import is_minimal
from .numring.elements import RingElement
from .numring.finite import GF, FiniteField, embedding, root_multiplicities
from .numring.primes import LocalPrime
from .weierstrass import WeierstrassModel

CONSTANT = "ConstantZ2"
MULTIPLICATIVE = "Mu2"
INFINITESIMAL = "Alpha2"


class NonMinimalModelError(ValueError):
    pass


@dataclass(frozen=True)
class EffectiveModelFiber:
    d: int
    two_d: RingElement
    a1_d: RingElement
    a3_d: RingElement
    fiber_type: str
    a: RingElement  # Tate-Oort parameters, a * b = 2
    b: RingElement
    prime: LocalPrime = field(repr=False)

    @property
    def infinitesimal(self) -> bool:
        return self.fiber_type == INFINITESIMAL

    def with_parameters(self, a: RingElement, b: RingElement) -> EffectiveModelFiber:
        """Same fiber, Tate-Oort pair replaced (for orbit comparisons)."""
        if a * b != 2:
            raise ValueError("Tate-Oort parameters must satisfy a*b = 2")
        return EffectiveModelFiber(self.d, self.two_d, self.a1_d, self.a3_d, self.fiber_type, a, b, self.prime)

    def to_json(self) -> dict:
        return {
            "prime": self.prime.label,
            "d": self.d,
            "fiber_type": self.fiber_type,
            "tate_oort": {"a": self.a.to_json(), "b": self.b.to_json(),
                          "val_a": self.prime.valuation(self.a), "val_b": self.prime.valuation(self.b)},
        }


def _require_minimal(model, P):
    if not is_minimal(model, P):
        raise NonMinimalModelError(f"model is not minimal at {P.label}; minimalize it first")


def effective_model_fiber(model: WeierstrassModel, P: LocalPrime, check_minimal: bool = True) -> EffectiveModelFiber:
    if check_minimal:
        _require_minimal(model, P)
    ring = model.ring
    two = ring.coerce(2)
    d = min(P.valuation(two), P.valuation(model.a1), P.valuation(model.a3))
    scale = P.uniformizer**d
    two_d, a1_d, a3_d = two / scale, model.a1 / scale, model.a3 / scale
    if d == 0:
        kind = CONSTANT
    elif P.valuation(two_d) == 0:
        kind = MULTIPLICATIVE
    else:
        kind = INFINITESIMAL
    return EffectiveModelFiber(d, two_d, a1_d, a3_d, kind, scale, two_d, P)


def tate_oort_isomorphic(G: EffectiveModelFiber, H: EffectiveModelFiber) -> bool:
    """Same orbit under lambda.(a, b) = (lambda a, b / lambda) with lambda a unit."""
    if G.prime != H.prime:
        raise ValueError("effective models over different primes")
    P = G.prime
    lam = H.a / G.a
    return P.valuation(lam) == 0 and lam * H.b == G.b


# fixed scheme -------------------------------------------------------------

@dataclass(frozen=True)
class FixedSchemeFiber:
    line: tuple  # residues of (2_d, a1_d, a3_d)
    polynomial: tuple  # affine equation, residue coefficients low -> high
    variable: str  # "x" or "y" (or "" when the affine part is empty)
    origin_multiplicity: int
    affine_multiplicities: tuple  # multiplicities of distinct geometric affine points
    prime: LocalPrime = field(repr=False)

    @property
    def length(self) -> int:
        return self.origin_multiplicity + sum(self.affine_multiplicities)

    @property
    def components(self) -> int:
        return 1 + len(self.affine_multiplicities)

    @property
    def geometric_points(self) -> int:
        return self.components

    @property
    def disconnected(self) -> bool:
        return self.components >= 2

    @property
    def etale(self) -> bool:
        return self.length == self.components

    def to_json(self) -> dict:
        return {
            "prime": self.prime.label,
            "line": [str(c) for c in self.line],
            "polynomial": [str(c) for c in self.polynomial],
            "variable": self.variable,
            "origin_multiplicity": self.origin_multiplicity,
            "affine_multiplicities": list(self.affine_multiplicities),
            "length": self.length,
            "components": self.components,
            "disconnected": self.disconnected,
        }


def _geometric_root_multiplicities(coeffs: list, k: FiniteField) -> list[int]:
    """Multiplicities of the distinct roots over the algebraic closure (degree <= 3)."""
    while coeffs and coeffs[-1].is_zero():
        coeffs = coeffs[:-1]
    deg = len(coeffs) - 1
    if deg <= 0:
        return []
    if deg > 3:
        raise ValueError("only polynomials of degree <= 3 are supported")

    def roots_in(ext_deg):
        K = GF(k.p, k.k * ext_deg)
        emb = embedding(k, K)
        return sorted(root_multiplicities([emb[c] for c in coeffs], K).values())

    # a polynomial of degree <= 3 splits over the quadratic extension unless it is
    # an irreducible cubic, which splits (separably) over the cubic extension
    mults = roots_in(2)
    if sum(mults) == deg:
        return mults
    return roots_in(3)


def fixed_scheme_fiber(model: WeierstrassModel, P: LocalPrime, check_minimal: bool = True) -> FixedSchemeFiber:
    if check_minimal:
        _require_minimal(model, P)
    G = effective_model_fiber(model, P, check_minimal=False)
    k = P.residue_field
    red = P.residue
    t2, l1, l3 = red(G.two_d), red(G.a1_d), red(G.a3_d)
    a1, a2, a3, a4, a6 = (red(c) for c in model.coefficients)
    k.zero()

    if not t2.is_zero():
        # y = -(l1 x + l3) / t2, substitute into the cubic
        inv = t2.inverse()
        ya, yb = -l1 * inv, -l3 * inv  # y = ya x + yb
        # f(x) = x^3 + a2 x^2 + a4 x + a6 - y^2 - a1 x y - a3 y
        c3 = k.one()
        c2 = a2 - ya * ya - a1 * ya
        c1 = a4 - 2 * ya * yb - a1 * yb - a3 * ya
        c0 = a6 - yb * yb - a3 * yb
        poly = [c0, c1, c2, c3]
        mults = _geometric_root_multiplicities(poly, k)
        return FixedSchemeFiber((t2, l1, l3), tuple(poly), "x", 1, tuple(mults), P)

    if not l1.is_zero():
        x0 = -l3 * l1.inverse()
        beta = a1 * x0 + a3
        gamma = ((x0 + a2) * x0 + a4) * x0 + a6
        poly = [-gamma, beta, k.one()]
        mults = _geometric_root_multiplicities(poly, k)
        return FixedSchemeFiber((t2, l1, l3), tuple(poly), "y", 2, tuple(mults), P)

    # line is Z = 0: only the origin, with multiplicity 4
    return FixedSchemeFiber((t2, l1, l3), (), "", 4, (), P)


__all__ = [
    "CONSTANT", "MULTIPLICATIVE", "INFINITESIMAL", "EffectiveModelFiber", "FixedSchemeFiber",
    "NonMinimalModelError", "effective_model_fiber", "fixed_scheme_fiber", "tate_oort_isomorphic",
]
