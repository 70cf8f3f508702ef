"""Weierstrass models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 and their invariants."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .numring.elements import NumberRing, RingElement

NAMES = ("a1", "a2", "a3", "a4", "a6")


class SingularModelError(ValueError):
    pass


class IntegralityError(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassInvariants:
    b2: RingElement
    b4: RingElement
    b6: RingElement
    b8: RingElement
    c4: RingElement
    c6: RingElement
    disc: RingElement

    @property
    def j(self) -> tuple[RingElement, RingElement]:
        """j as the exact pair (c4^3, disc)."""
        return (self.c4**3, self.disc)

    def j_value(self) -> RingElement:
        return self.c4**3 / self.disc


def compute_invariants(a1, a2, a3, a4, a6) -> WeierstrassInvariants:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    # self-checks of the standard identities
    assert 4 * b8 == b2 * b6 - b4 * b4
    assert c4**3 - c6 * c6 == 1728 * disc
    return WeierstrassInvariants(b2, b4, b6, b8, c4, c6, disc)


@dataclass(frozen=True)
class WeierstrassModel:
    ring: NumberRing
    a1: RingElement
    a2: RingElement
    a3: RingElement
    a4: RingElement
    a6: RingElement

    def __post_init__(self):
        for name in NAMES:
            object.__setattr__(self, name, self.ring.coerce(getattr(self, name)))
        if self.invariants.disc.is_zero():
            raise SingularModelError("discriminant is zero: the cubic is singular (need disc != 0)")

    @classmethod
    def _nonsingular(cls, ring: NumberRing, *coeffs) -> WeierstrassModel:
        """Skip the discriminant test (for images of a nonsingular model)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "ring", ring)
        for name, c in zip(NAMES, coeffs):
            object.__setattr__(obj, name, ring.coerce(c))
        return obj

    @classmethod
    def from_coefficients(cls, ring: NumberRing, coeffs) -> WeierstrassModel:
        """``coeffs`` is [a1, a2, a3, a4, a6] or a dict keyed by those names (missing = 0)."""
        if isinstance(coeffs, dict):
            coeffs = [coeffs.get(n, 0) for n in NAMES]
        return cls(ring, *coeffs)

    @property
    def coefficients(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def invariants(self) -> WeierstrassInvariants:
        return compute_invariants(*self.coefficients)

    @property
    def disc(self) -> RingElement:
        return self.invariants.disc

    @property
    def c4(self) -> RingElement:
        return self.invariants.c4

    def is_integral(self) -> bool:
        return all(a.is_integral() for a in self.coefficients)

    def to_json(self) -> dict:
        return {n: a.to_json() for n, a in zip(NAMES, self.coefficients)}

    def __str__(self):
        a1, a2, a3, a4, a6 = self.coefficients
        lhs = "y^2" + (f" + ({a1})xy" if a1 else "") + (f" + ({a3})y" if a3 else "")
        rhs = "x^3" + (f" + ({a2})x^2" if a2 else "") + (f" + ({a4})x" if a4 else "") + (f" + ({a6})" if a6 else "")
        return f"{lhs} = {rhs}"


def key_identity(model: WeierstrassModel) -> RingElement:
    """b2*a4 + b6, checked against 4(a2 a4 + a6) + a1^2 a4 + a3^2."""
    a1, a2, a3, a4, a6 = model.coefficients
    inv = model.invariants
    value = inv.b2 * a4 + inv.b6
    assert value == 4 * (a2 * a4 + a6) + a1 * a1 * a4 + a3 * a3
    return value


@dataclass(frozen=True)
class CoordinateChange:
    """x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""

    u: object = 1
    r: object = 0
    s: object = 0
    t: object = 0

    @classmethod
    def identity(cls, ring: NumberRing) -> CoordinateChange:
        return cls(ring.one(), ring.zero(), ring.zero(), ring.zero())

    def on(self, ring: NumberRing) -> CoordinateChange:
        u, r, s, t = (ring.coerce(v) for v in (self.u, self.r, self.s, self.t))
        if u.is_zero():
            raise ValueError("u must be nonzero")
        return CoordinateChange(u, r, s, t)

    def compose(self, other: CoordinateChange) -> CoordinateChange:
        """Apply self first, then other."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return CoordinateChange(u1 * u2, r1 + u1 * u1 * r2, s1 + u1 * s2,
                                t1 + u1**3 * t2 + s1 * u1 * u1 * r2)

    def inverse(self) -> CoordinateChange:
        u, r, s, t = self.u, self.r, self.s, self.t
        ui = 1 / u
        return CoordinateChange(ui, -r * ui * ui, -s * ui, (r * s - t) * ui**3)


def transform(model: WeierstrassModel, change: CoordinateChange, P=None, check: bool = True) -> WeierstrassModel:
    """Standard substitution.  Integrality is checked globally, or at P when given."""
    ring = model.ring
    change = change.on(ring)
    u, r, s, t = change.u, change.r, change.s, change.t
    a1, a2, a3, a4, a6 = model.coefficients
    ui = 1 / u
    n1 = (a1 + 2 * s) * ui
    n2 = (a2 - s * a1 + 3 * r - s * s) * ui**2
    n3 = (a3 + r * a1 + 2 * t) * ui**3
    n4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) * ui**4
    n6 = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) * ui**6
    # disc scales by u^-12, so the image of a nonsingular model is nonsingular
    new = WeierstrassModel._nonsingular(ring, n1, n2, n3, n4, n6)
    if check:
        ok = all(P.valuation(c) >= 0 for c in new.coefficients) if P is not None else new.is_integral()
        if not ok:
            where = f"at {P.label}" if P is not None else "globally"
            raise IntegralityError(f"transformed model is not integral {where}")
    return new


def reduces_to_zero(values, P) -> bool:
    return all(P.valuation(v) > 0 for v in values)


def vanishing_equivalence(model: WeierstrassModel, P) -> tuple[bool, bool]:
    """((2, a1, a3) all in P, (2, disc, c4) all in P); the two agree at char-2 primes."""
    inv = model.invariants
    left = reduces_to_zero((model.ring.coerce(2), model.a1, model.a3), P)
    right = reduces_to_zero((model.ring.coerce(2), inv.disc, inv.c4), P)
    return left, right
