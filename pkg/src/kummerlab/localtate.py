"""Tate's algorithm over the local rings of :mod:`kummerlab.numring`.

The algorithm follows Tate's original description in the layout popularised by
Cremona: first move the singular point of the reduction to (0, 0), test the
easy additive types, then study the cubic T^3 + b T^2 + c T + d and, if needed,
walk down the I_n* chain.  When every test fails the equation is not minimal,
so it is divided by the uniformizer and the whole thing restarts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import inf

from .numring.elements import EISENSTEIN, NumberRing, RingElement
from .numring.finite import root_multiplicities
from .numring.primes import LocalPrime, primes_over_two
from .weierstrass import (CoordinateChange, IntegralityError, WeierstrassModel, transform)

_FAMILIES = ("I0", "In", "II", "III", "IV", "I0*", "In*", "IV*", "III*", "II*")
_FIXED_M = {"I0": 1, "II": 1, "III": 2, "IV": 3, "I0*": 5, "IV*": 7, "III*": 8, "II*": 9}


@dataclass(frozen=True)
class KodairaSymbol:
    family: str
    n: int = 0

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown Kodaira family {self.family!r}")
        if self.family in ("In", "In*") and self.n < 1:
            raise ValueError("I_n and I_n* need n >= 1")

    @classmethod
    def parse(cls, text: str) -> KodairaSymbol:
        t = text.strip().replace("_", "")
        m = re.fullmatch(r"I(\d+)(\*?)", t)
        if m:
            n, star = int(m.group(1)), m.group(2)
            if n == 0:
                return cls("I0*" if star else "I0")
            return cls("In*" if star else "In", n)
        return cls(t)

    @property
    def components(self) -> int:
        if self.family == "In":
            return self.n
        if self.family == "In*":
            return 5 + self.n
        return _FIXED_M[self.family]

    def __str__(self):
        if self.family == "In":
            return f"I{self.n}"
        if self.family == "In*":
            return f"I{self.n}*"
        return self.family


@dataclass(frozen=True)
class TateResult:
    symbol: KodairaSymbol
    m: int
    val_delta: int
    conductor: int
    delta_wild: int
    minimal_model: WeierstrassModel
    change: CoordinateChange = field(repr=False)
    reduction: str  # "good", "multiplicative" or "additive"
    tamagawa: int
    prime: LocalPrime = field(repr=False)

    def to_json(self) -> dict:
        return {
            "prime": self.prime.label,
            "symbol": str(self.symbol),
            "m": self.m,
            "val_delta": self.val_delta,
            "conductor": self.conductor,
            "delta_wild": self.delta_wild,
            "reduction": self.reduction,
            "tamagawa": self.tamagawa,
            "minimal_coefficients": self.minimal_model.to_json(),
        }


class _Local:
    """Residue-field helpers bound to one prime."""

    def __init__(self, P: LocalPrime):
        self.P = P
        self.F = P.residue_field
        self.p = P.p
        self.pi = P.uniformizer

    def val(self, x):
        return self.P.valuation(x)

    def div(self, x) -> bool:
        return self.P.valuation(x) > 0

    def red(self, x):
        return self.P.residue(x)

    def preduce(self, x) -> RingElement:
        return self.P.lift(self.P.residue(x))

    def pinv(self, x) -> RingElement:
        return self.P.lift(self.P.residue(x).inverse())

    def proot(self, x, e: int) -> RingElement:
        """Lift of an e-th root of the residue (e = p uses inverse Frobenius)."""
        a = self.P.residue(x)
        if e == self.p:
            return self.P.lift(a ** (self.F.q // self.p))
        for z in self.F:
            if z**e == a:
                return self.P.lift(z)
        raise ArithmeticError(f"residue {a} has no {e}-th root")

    def quadroots(self, a, b, c) -> bool:
        a, b, c = self.red(a), self.red(b), self.red(c)
        if a.is_zero():
            return (not b.is_zero()) or c.is_zero()
        return bool(root_multiplicities([c, b, a], self.F))

    def cubicroots(self, b, c, d) -> int:
        return len(root_multiplicities([self.red(d), self.red(c), self.red(b), self.F.one()], self.F))


def _check_integral(model: WeierstrassModel, P: LocalPrime):
    for c in model.coefficients:
        if P.valuation(c) < 0:
            raise IntegralityError(f"model is not integral at {P.label}")


def _run_tate(model: WeierstrassModel, P: LocalPrime):
    """Core loop; returns (symbol, tamagawa, final model, accumulated change, restarts)."""
    _check_integral(model, P)
    L = _Local(P)
    ring = model.ring
    p = L.p
    pi = L.pi
    pi2, pi3, pi4 = pi**2, pi**3, pi**4
    half = L.pinv(2) if p != 2 else None
    total = CoordinateChange.identity(ring)
    restarts = 0
    C = model

    def apply(r=0, s=0, t=0):
        nonlocal C, total
        ch = CoordinateChange(ring.one(), ring.coerce(r), ring.coerce(s), ring.coerce(t))
        C = transform(C, ch, P=P)
        total = total.compose(ch)

    while True:
        inv = C.invariants
        vD = L.val(inv.disc)
        if vD == 0:
            return KodairaSymbol("I0"), 1, C, total, restarts

        a1, a2, a3, a4, a6 = C.coefficients
        b2, b4, b6 = inv.b2, inv.b4, inv.b6
        c4, c6 = inv.c4, inv.c6
        # move the singular point to (0, 0)
        if p == 2:
            if L.div(b2):
                r = L.proot(a4, 2)
                t = L.proot(((r + a2) * r + a4) * r + a6, 2)
            else:
                tmp = L.pinv(a1)
                r = tmp * a3
                t = tmp * (a4 + r * r)
        elif p == 3:
            r = L.proot(-b6, 3) if L.div(b2) else -L.pinv(b2) * b4
            t = a1 * r + a3
        else:
            if L.div(c4):
                r = -L.pinv(12) * b2
            else:
                r = -L.pinv(12 * c4) * (c6 + b2 * c4)
            t = -half * (a1 * r + a3)
        apply(r=L.preduce(r), t=L.preduce(t))
        a1, a2, a3, a4, a6 = C.coefficients
        inv = C.invariants
        b6, b8 = inv.b6, inv.b8
        assert L.div(a3) and L.div(a4) and L.div(a6), "singular point not at the origin"

        if not L.div(c4):
            # multiplicative, I_n with n = vD
            if L.quadroots(1, a1, -a2):
                cp = vD
            else:
                cp = 2 if vD % 2 == 0 else 1
            return KodairaSymbol("In", vD), cp, C, total, restarts

        if L.val(a6) < 2:
            return KodairaSymbol("II"), 1, C, total, restarts
        if L.val(b8) < 3:
            return KodairaSymbol("III"), 2, C, total, restarts
        if L.val(b6) < 3:
            cp = 3 if L.quadroots(1, a3 / pi, -a6 / pi2) else 1
            return KodairaSymbol("IV"), cp, C, total, restarts

        # arrange p | a1, a2; p^2 | a3, a4; p^3 | a6
        if p == 2:
            s = L.proot(a2, 2)
            t = pi * L.proot(a6 / pi2, 2)
        elif p == 3:
            s, t = a1, a3
        else:
            s, t = -a1 * half, -a3 * half
        apply(s=s, t=t)
        a1, a2, a3, a4, a6 = C.coefficients

        b = L.preduce(a2 / pi)
        c = L.preduce(a4 / pi2)
        d = L.preduce(a6 / pi3)
        bb, cc, bc = b * b, c * c, b * c
        w = 27 * d * d - bb * cc + 4 * b * bb * d - 18 * bc * d + 4 * c * cc
        x = 3 * c - bb
        sw = (3 if L.div(x) else 2) if L.div(w) else 1

        if sw == 1:
            return KodairaSymbol("I0*"), 1 + L.cubicroots(b, c, d), C, total, restarts

        if sw == 2:
            # move the double root to T = 0
            if p == 2:
                r = L.proot(c, 2)
            elif p == 3:
                r = c * L.pinv(b)
            else:
                r = (bc - 9 * d) * L.pinv(2 * x)
            apply(r=pi * L.preduce(r))
            ix = iy = 3
            mx = my = pi2
            while True:
                a1, a2, a3, a4, a6 = C.coefficients
                a2t = L.preduce(a2 / pi)
                a3t = L.preduce(a3 / my)
                a4t = L.preduce(a4 / (pi * mx))
                a6t = L.preduce(a6 / (mx * my))
                if not L.div(a3t * a3t + 4 * a6t):
                    cp = 4 if L.quadroots(1, a3t, -a6t) else 2
                    break
                t = my * (L.proot(a6t, 2) if p == 2 else L.preduce(-a3t * half))
                apply(t=t)
                my = my * pi
                iy += 1
                a1, a2, a3, a4, a6 = C.coefficients
                a2t = L.preduce(a2 / pi)
                a3t = L.preduce(a3 / my)
                a4t = L.preduce(a4 / (pi * mx))
                a6t = L.preduce(a6 / (mx * my))
                if not L.div(a4t * a4t - 4 * a6t * a2t):
                    cp = 4 if L.quadroots(a2t, a4t, a6t) else 2
                    break
                if p == 2:
                    r = mx * L.proot(a6t * L.pinv(a2t), 2)
                else:
                    r = mx * L.preduce(-a4t * L.pinv(2 * a2t))
                apply(r=r)
                mx = mx * pi
                ix += 1
            return KodairaSymbol("In*", ix + iy - 5), cp, C, total, restarts

        # triple root: move it to T = 0
        if p == 2:
            r = b
        elif p == 3:
            r = L.proot(-d, 3)
        else:
            r = -b * L.pinv(3)
        apply(r=pi * L.preduce(r))
        a1, a2, a3, a4, a6 = C.coefficients
        x3t = L.preduce(a3 / pi2)
        x6t = L.preduce(a6 / pi4)
        if not L.div(x3t * x3t + 4 * x6t):
            cp = 3 if L.quadroots(1, x3t, -x6t) else 1
            return KodairaSymbol("IV*"), cp, C, total, restarts
        t = -pi2 * L.proot(x6t, 2) if p == 2 else pi2 * L.preduce(-x3t * half)
        apply(t=t)
        a1, a2, a3, a4, a6 = C.coefficients
        if L.val(a4) < 4:
            return KodairaSymbol("III*"), 2, C, total, restarts
        if L.val(a6) < 6:
            return KodairaSymbol("II*"), 1, C, total, restarts
        # not minimal: divide out and start again
        ch = CoordinateChange(pi, ring.zero(), ring.zero(), ring.zero())
        C = transform(C, ch, P=P)
        total = total.compose(ch)
        restarts += 1


def tate_algorithm(model: WeierstrassModel, P: LocalPrime) -> TateResult:
    if P.ring != model.ring:
        raise ValueError("prime and model live over different rings")
    symbol, cp, C, total, restarts = _run_tate(model, P)
    m = symbol.components
    if restarts == 0:
        # keep the caller's equation when it was already minimal
        C, total = model, CoordinateChange.identity(model.ring)
    vD = P.valuation(C.invariants.disc)
    conductor = vD - m + 1  # Ogg
    if symbol.family == "I0":
        reduction, wild = "good", 0
    elif symbol.family == "In":
        reduction, wild = "multiplicative", 0
    else:
        reduction, wild = "additive", conductor - 2
    return TateResult(symbol, m, vD, conductor, wild, C, total, reduction, cp, P)


def minimal_model(model: WeierstrassModel, P: LocalPrime) -> tuple[WeierstrassModel, CoordinateChange]:
    res = tate_algorithm(model, P)
    return res.minimal_model, res.change


def is_minimal(model: WeierstrassModel, P: LocalPrime) -> bool:
    return _run_tate(model, P)[4] == 0


def base_change_tame_cubic(model: WeierstrassModel, a: int = 2) -> WeierstrassModel:
    """Reinterpret a model over Z[w] over the tower Z[w][c]/(c^3 - a)."""
    if model.ring != EISENSTEIN:
        raise ValueError("base change needs a model over Z[w] (quadratic field with m = -3)")
    tower = NumberRing.tower(a)
    return WeierstrassModel(tower, *(tower.coerce(c) for c in model.coefficients))


@dataclass(frozen=True)
class KrausResult:
    order: int | None
    structure: str | None
    reason: str

    def to_json(self):
        return {"order": self.order, "structure": self.structure, "reason": self.reason}


def kraus_potential_good_reduction(model: WeierstrassModel, P: LocalPrime | None = None) -> KrausResult:
    """Order of Gal(L^good / L^sh) for the one branch of Kraus's criterion used here."""
    if P is None:
        (P,) = primes_over_two(model.ring)
    if P.p != 2 or P.e != 1:
        raise ValueError("the implemented branch needs an unramified prime above 2 (e = 1)")
    res = tate_algorithm(model, P)
    if res.reduction == "good":
        return KrausResult(1, "trivial", "good reduction already")
    if res.reduction != "additive":
        raise ValueError("potential good reduction test needs additive reduction")
    C = res.minimal_model
    inv = C.invariants
    vD = P.valuation(inv.disc)
    vc4 = P.valuation(inv.c4)
    if 3 * vc4 < vD:
        return KrausResult(None, None, "val(j) < 0: potentially multiplicative")
    if 3 * vc4 >= 12 * P.e + vD and vD % 3 != 0 and res.symbol.family not in ("IV", "IV*"):
        # -1 is the only involution in Q8 x| C3, so an order-6 subgroup is C2 x C3
        return KrausResult(6, "C2xC3", "3 val(c4) >= 12e + val(disc), 3 does not divide val(disc), type not IV/IV*")
    return KrausResult(None, None, "undetermined by implemented criterion")


# local structure of E[2] -------------------------------------------------------

def two_division_polynomial(model: WeierstrassModel) -> list:
    """Monic g(X) = X^3 + b2 X^2 + 8 b4 X + 16 b6, whose roots are 4x for the 2-torsion x."""
    inv = model.invariants
    return [16 * inv.b6, 8 * inv.b4, inv.b2, model.ring.one()]


def _poly_shift(coeffs, r, scale):
    """Coefficients of f(r + scale*Y)."""
    out = [coeffs[0].ring.zero()] * len(coeffs)
    # Horner: acc = acc * (r + scale Y) + c
    for c in reversed(coeffs):
        nxt = [c.ring.zero()] * len(coeffs)
        for i, a in enumerate(out):
            if a.is_zero():
                continue
            nxt[i] = nxt[i] + a * r
            if i + 1 < len(nxt):
                nxt[i + 1] = nxt[i + 1] + a * scale
        nxt[0] = nxt[0] + c
        out = nxt
    return out


def count_local_roots(coeffs, P: LocalPrime, _depth: int = 0) -> int:
    """Number of roots in O_P of a separable integral polynomial (coeffs low -> high)."""
    if _depth > 200:
        raise ArithmeticError("root refinement did not terminate; polynomial not separable?")
    v = min(P.valuation(c) for c in coeffs)
    if v == inf:
        raise ValueError("zero polynomial")
    if v:
        coeffs = [c / P.uniformizer**v for c in coeffs]
    red = [P.residue(c) for c in coeffs]
    while len(red) > 1 and red[-1].is_zero():
        red.pop()
    if len(red) == 1:
        return 0
    total = 0
    for a, mult in root_multiplicities(red, P.residue_field).items():
        if mult == 1:
            total += 1
        else:
            total += count_local_roots(_poly_shift(coeffs, P.lift(a), P.uniformizer), P, _depth + 1)
    return total


def two_torsion_rank(model: WeierstrassModel, P: LocalPrime) -> int:
    """Number of nonzero 2-torsion points defined over the completion at P."""
    return count_local_roots(two_division_polynomial(model), P)


def two_torsion_constant(model: WeierstrassModel, P: LocalPrime) -> bool:
    return two_torsion_rank(model, P) == 3


__all__ = [
    "KodairaSymbol", "TateResult", "KrausResult", "tate_algorithm", "minimal_model", "is_minimal",
    "base_change_tame_cubic", "kraus_potential_good_reduction", "two_division_polynomial",
    "count_local_roots", "two_torsion_rank", "two_torsion_constant",
]
