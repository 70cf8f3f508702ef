"""Exact elements of Q, quadratic fields Q(sqrt m), and the pure cubic tower Q(w)(c), c^3 = a.

Quadratic elements are stored as ``x + y*theta`` with theta = (1 + sqrt m)/2 when
m = 1 mod 4 and theta = sqrt m otherwise, so that integral elements are exactly
the pairs of integers.  Tower elements are triples ``x0 + x1*c + x2*c^2`` over
Q(w), w = (1 + sqrt -3)/2.

All values are immutable.  Coordinates are :class:`fractions.Fraction` so the
same classes serve for field elements (Tate's algorithm divides by the
uniformizer) and ring elements (``is_integral``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import isqrt

from .. import _util


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def _lean(v):
    """Integral Fractions become ints, which keeps the common integral case fast."""
    if type(v) is float:
        raise TypeError("inexact coordinate")
    return v.numerator if type(v) is Fraction and v.denominator == 1 else v


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot interpret {v!r} as a rational number")


@dataclass(frozen=True)
class NumberRing:
    """One of the supported rings: ``rational``, ``quadratic`` (m), ``tower`` (a)."""

    kind: str
    m: int | None = None
    a: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            return
        if self.kind == "quadratic":
            if self.m is None or self.m in (0, 1) or not _is_squarefree(self.m):
                raise ValueError(f"m = {self.m} is not a squarefree integer != 0, 1")
            return
        if self.kind == "tower":
            if self.a is None or self.a == 0:
                raise ValueError("tower needs a nonzero integer a")
            # c^3 - a Eisenstein at the inert prime 2 of Z[w]
            if _util.v_p(self.a, 2) != 1:
                raise ValueError(f"tower parameter a = {self.a} must have 2-adic valuation 1")
            object.__setattr__(self, "m", None)
            return
        raise ValueError(f"unsupported ring kind {self.kind!r}")

    # constructors
    @classmethod
    def rational(cls) -> NumberRing:
        return cls("rational")

    @classmethod
    def quadratic(cls, m: int) -> NumberRing:
        return cls("quadratic", m=m)

    @classmethod
    def tower(cls, a: int = 2) -> NumberRing:
        return cls("tower", a=a)

    @property
    def degree(self) -> int:
        return {"rational": 1, "quadratic": 2, "tower": 6}[self.kind]

    @property
    def base(self) -> NumberRing:
        """Z[w] for the tower; the ring itself otherwise."""
        if self.kind == "tower":
            return EISENSTEIN
        return self

    @cached_property
    def theta_relation(self) -> tuple[int, int]:
        """(t, n) with theta^2 = t*theta + n."""
        m = self.m
        if m % 4 == 1:
            return 1, (m - 1) // 4
        return 0, m

    @property
    def discriminant(self) -> int:
        if self.kind == "rational":
            return 1
        if self.kind == "quadratic":
            return self.m if self.m % 4 == 1 else 4 * self.m
        raise ValueError("discriminant only implemented for Q and quadratic fields")

    def __call__(self, *coords) -> RingElement:
        if self.kind == "rational":
            (v,) = coords
            if isinstance(v, RatElem):
                return v
            return RatElem(_frac(v))
        if self.kind == "quadratic":
            if len(coords) == 1:
                return self.coerce(coords[0])
            x, y = coords
            return QuadElem(self, _frac(x), _frac(y))
        if len(coords) == 1:
            return self.coerce(coords[0])
        comps = tuple(EISENSTEIN.coerce(c) if not isinstance(c, (list, tuple)) else EISENSTEIN(*c)
                      for c in coords)
        comps = comps + (EISENSTEIN.zero(),) * (3 - len(comps))
        return TowerElem(self, comps)

    def coerce(self, v) -> RingElement:
        if isinstance(v, RingElement):
            if v.ring == self:
                return v
            if isinstance(v, RatElem):
                return self(v.value) if self.kind == "rational" else self.coerce(v.value)
            if self.kind == "tower" and isinstance(v, QuadElem) and v.ring == EISENSTEIN:
                return TowerElem(self, (v, EISENSTEIN.zero(), EISENSTEIN.zero()))
            raise TypeError(f"cannot coerce {v!r} into {self}")
        q = _frac(v)
        if self.kind == "rational":
            return RatElem(q)
        if self.kind == "quadratic":
            return QuadElem(self, q, Fraction(0))
        z = EISENSTEIN.zero()
        return TowerElem(self, (QuadElem(EISENSTEIN, q, Fraction(0)), z, z))

    def zero(self) -> RingElement:
        return self.coerce(0)

    def one(self) -> RingElement:
        return self.coerce(1)

    def gen(self) -> RingElement:
        """theta for quadratic rings, c for the tower."""
        if self.kind == "quadratic":
            return QuadElem(self, Fraction(0), Fraction(1))
        if self.kind == "tower":
            z = EISENSTEIN.zero()
            return TowerElem(self, (z, EISENSTEIN.one(), z))
        raise ValueError("Q has no generator")

    def sqrt_m(self) -> QuadElem:
        """sqrt(m) as an element (2*theta - 1 when m = 1 mod 4)."""
        t, _ = self.theta_relation
        return QuadElem(self, Fraction(-t), Fraction(2 if t else 1))

    # serialization
    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        if self.kind == "quadratic":
            return {"kind": "quadratic", "m": self.m}
        return {"kind": "tower", "a": self.a}

    @classmethod
    def from_json(cls, data: dict) -> NumberRing:
        kind = data.get("kind")
        if kind == "rational":
            return cls.rational()
        if kind == "quadratic":
            m = data.get("m")
            if not isinstance(m, int):
                raise ValueError("quadratic field needs an integer 'm'")
            return cls.quadratic(m)
        if kind == "tower":
            a = data.get("a", 2)
            if not isinstance(a, int):
                raise ValueError("tower needs an integer 'a'")
            return cls.tower(a)
        raise ValueError(f"unsupported ring kind {kind!r}")

    def element_from_json(self, value, basis: str = "theta") -> RingElement:
        if self.kind == "rational":
            if isinstance(value, list):
                if len(value) != 1 and not (len(value) == 2 and value[1] == 0):
                    raise ValueError(f"rational coefficient must be an integer, got {value!r}")
                value = value[0]
            return self(value)
        if self.kind == "quadratic":
            if isinstance(value, (int, str)):
                return self.coerce(value)
            if not (isinstance(value, list) and len(value) == 2):
                raise ValueError(f"quadratic coefficient must be a pair [x, y], got {value!r}")
            x, y = (_frac(v) for v in value)
            if basis == "sqrt":
                return self.coerce(x) + self.sqrt_m() * y
            return QuadElem(self, x, y)
        if not (isinstance(value, list) and len(value) == 3):
            raise ValueError(f"tower coefficient must be a triple of pairs, got {value!r}")
        return self(*[EISENSTEIN.element_from_json(v) for v in value])

    def __str__(self):
        if self.kind == "rational":
            return "Z"
        if self.kind == "quadratic":
            return f"O(Q(sqrt({self.m})))"
        return f"Z[w][c]/(c^3 - {self.a})"


class RingElement:
    """Common arithmetic plumbing; subclasses implement _add/_mul/_neg/inverse."""

    __slots__ = ()

    def _wrap(self, other):
        if isinstance(other, RingElement):
            if other.ring == self.ring:
                return other
            try:
                return self.ring.coerce(other)
            except TypeError:
                return NotImplemented
        if isinstance(other, (int, Fraction)):
            return self.ring.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is NotImplemented else self._add(o)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is NotImplemented else self._add(-o)

    def __rsub__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is NotImplemented else o._add(-self)

    def __mul__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is NotImplemented else self._mul(o)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is NotImplemented else self._mul(o.inverse())

    def __rtruediv__(self, other):
        o = self._wrap(other)
        return NotImplemented if o is NotImplemented else o._mul(self.inverse())

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return self._key() == o._key()

    def __hash__(self):
        return hash((self.ring, self._key()))

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self._key())


class RatElem(RingElement):
    __slots__ = ("value",)
    ring = None  # set below

    def __init__(self, value: Fraction):
        object.__setattr__(self, "value", _lean(value))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def _key(self):
        return (self.value,)

    def _add(self, o):
        return RatElem(self.value + o.value)

    def _neg(self):
        return RatElem(-self.value)

    __neg__ = _neg

    def _mul(self, o):
        return RatElem(self.value * o.value)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("division by zero")
        return RatElem(Fraction(1) / self.value)

    def is_integral(self) -> bool:
        return self.value.denominator == 1

    def norm(self) -> Fraction:
        return self.value

    def common_denominator(self) -> int:
        return self.value.denominator

    def to_json(self):
        return _util.json_rational(self.value)

    def __repr__(self):
        return str(self.value)

    __str__ = __repr__


class QuadElem(RingElement):
    __slots__ = ("ring", "x", "y")

    def __init__(self, ring: NumberRing, x: Fraction, y: Fraction):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "x", _lean(x))
        object.__setattr__(self, "y", _lean(y))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def _key(self):
        return (self.x, self.y)

    def _add(self, o):
        return QuadElem(self.ring, self.x + o.x, self.y + o.y)

    def __neg__(self):
        return QuadElem(self.ring, -self.x, -self.y)

    def _mul(self, o):
        t, n = self.ring.theta_relation
        yy = self.y * o.y
        return QuadElem(self.ring, self.x * o.x + n * yy, self.x * o.y + self.y * o.x + t * yy)

    def conjugate(self) -> QuadElem:
        t, _ = self.ring.theta_relation
        return QuadElem(self.ring, self.x + t * self.y, -self.y)

    def norm(self) -> Fraction:
        t, n = self.ring.theta_relation
        return self.x * self.x + t * self.x * self.y - n * self.y * self.y

    def trace(self) -> Fraction:
        t, _ = self.ring.theta_relation
        return 2 * self.x + t * self.y

    def inverse(self):
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("division by zero")
        c = self.conjugate()
        return QuadElem(self.ring, Fraction(c.x) / nm, Fraction(c.y) / nm)

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def common_denominator(self) -> int:
        return _util.lcm(self.x.denominator, self.y.denominator)

    def is_rational(self) -> bool:
        return self.y == 0

    def to_json(self):
        return [_util.json_rational(self.x), _util.json_rational(self.y)]

    def __repr__(self):
        m = self.ring.m
        sym = {-3: "w", -1: "i"}.get(m, f"sqrt({m})" if m % 4 != 1 else f"t{m}")
        if self.y == 0:
            return str(self.x)
        ys = "" if self.y == 1 else "-" if self.y == -1 else f"{self.y}*"
        if self.x == 0:
            return f"{ys}{sym}"
        sign = "+" if not ys.startswith("-") else ""
        return f"{self.x}{sign}{ys}{sym}"

    __str__ = __repr__


class TowerElem(RingElement):
    __slots__ = ("ring", "c")

    def __init__(self, ring: NumberRing, comps: tuple):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "c", comps)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def _key(self):
        return tuple(v for comp in self.c for v in comp._key())

    def _add(self, o):
        return TowerElem(self.ring, tuple(p + q for p, q in zip(self.c, o.c)))

    def __neg__(self):
        return TowerElem(self.ring, tuple(-p for p in self.c))

    def _mul(self, o):
        a = self.ring.a
        x0, x1, x2 = self.c
        y0, y1, y2 = o.c
        # c^3 = a, c^4 = a*c
        r0 = x0 * y0 + (x1 * y2 + x2 * y1) * a
        r1 = x0 * y1 + x1 * y0 + x2 * y2 * a
        r2 = x0 * y2 + x1 * y1 + x2 * y0
        return TowerElem(self.ring, (r0, r1, r2))

    def norm(self) -> QuadElem:
        """Norm down to Q(w)."""
        a = self.ring.a
        x0, x1, x2 = self.c
        return x0**3 + x1**3 * a + x2**3 * (a * a) - x0 * x1 * x2 * (3 * a)

    def inverse(self):
        a = self.ring.a
        x0, x1, x2 = self.c
        nm = self.norm()
        if nm.is_zero():
            raise ZeroDivisionError("division by zero")
        adj = (x0 * x0 - x1 * x2 * a, x2 * x2 * a - x0 * x1, x1 * x1 - x0 * x2)
        inv = nm.inverse()
        return TowerElem(self.ring, tuple(v * inv for v in adj))

    def is_integral(self) -> bool:
        return all(v.is_integral() for v in self.c)

    def common_denominator(self) -> int:
        return _util.lcm(*(v.common_denominator() for v in self.c))

    def to_json(self):
        return [v.to_json() for v in self.c]

    def __repr__(self):
        parts = []
        for i, v in enumerate(self.c):
            if not v.is_zero():
                parts.append(f"({v})" + ("" if i == 0 else "*c" if i == 1 else "*c^2"))
        return " + ".join(parts) or "0"

    __str__ = __repr__


RATIONAL = NumberRing.rational()
EISENSTEIN = NumberRing.quadratic(-3)
RatElem.ring = RATIONAL


def norm(x: RingElement):
    """Field norm to the base: Q for rational/quadratic, Q(w) for the tower."""
    return x.norm()


def absolute_norm(x: RingElement) -> Fraction:
    """Norm all the way down to Q."""
    n = x.norm()
    if isinstance(n, QuadElem):
        return n.norm()
    return n


def rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def sqrt(x: RingElement) -> RingElement | None:
    """A square root of ``x`` inside its field, or None.  Rational and quadratic rings only."""
    ring = x.ring
    if ring.kind == "rational":
        r = rational_sqrt(x.value)
        return None if r is None else ring(r)
    if ring.kind != "quadratic":
        raise NotImplementedError("square roots only for Q and quadratic fields")
    if x.is_zero():
        return x
    # write x = A + B*sqrt(m); a root u + v*sqrt(m) has u^2 = (A +- sqrt(N(x))) / 2
    m = ring.m
    t, _ = ring.theta_relation
    A = x.x + (Fraction(x.y, 2) if t else 0)
    B = Fraction(x.y, 2) if t else x.y
    n = rational_sqrt(x.norm())
    if n is None:
        return None
    sm = ring.sqrt_m()
    for cand in ((A + n) / 2, (A - n) / 2):
        u = rational_sqrt(cand)
        if u is not None and u != 0:
            v = B / (2 * u)
            r = ring.coerce(u) + sm * v
            if r * r == x:
                return r
        # u = 0: x = m v^2
        if cand == 0 and A != 0 and B == 0:
            v = rational_sqrt(Fraction(A) / m)
            if v is not None:
                r = sm * v
                if r * r == x:
                    return r
    return None
