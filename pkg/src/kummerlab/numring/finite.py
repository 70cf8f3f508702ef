"""Small finite fields GF(p^k), used as residue fields and for geometric point counts.

Elements are :class:`FFElem` wrappers around an integer code: the base-p digits
of the code are the coefficients of the element in the power basis of the
defining polynomial.  Everything is exhaustive-search friendly; nothing here
is meant for large fields.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product


def _poly_mulmod(a, b, mod, p):
    # a, b: coefficient lists (low -> high); mod: monic, len k+1
    k = len(mod) - 1
    res = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for d in range(len(res) - 1, k - 1, -1):
        c = res[d]
        if c:
            for i in range(k + 1):
                res[d - k + i] = (res[d - k + i] - c * mod[i]) % p
    return res[:k]


def _has_root_free_factorization(mod, p):
    """True if the monic polynomial ``mod`` is irreducible over GF(p)."""
    k = len(mod) - 1
    if k == 1:
        return True
    # brute force: no monic factor of degree <= k // 2
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            f = list(tail) + [1]
            # polynomial long division of mod by f
            r = list(mod)
            for i in range(len(r) - 1, d - 1, -1):
                c = r[i]
                if c:
                    for j in range(d + 1):
                        r[i - d + j] = (r[i - d + j] - c * f[j]) % p
            if not any(r[:d]):
                return False
    return True


def _first_irreducible(p, k):
    for tail in product(range(p), repeat=k):
        mod = list(reversed(tail)) + [1]
        if mod[0] and _has_root_free_factorization(mod, p):
            return tuple(mod)
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


class FiniteField:
    """GF(p^k) given by a monic irreducible modulus (low -> high coefficients)."""

    def __init__(self, p: int, modulus=None, k: int | None = None):
        if modulus is None:
            modulus = (0, 1) if (k or 1) == 1 else _first_irreducible(p, k)
        modulus = tuple(c % p for c in modulus)
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if not _has_root_free_factorization(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = len(modulus) - 1
        self.q = p**self.k
        self.modulus = modulus
        self._mul_table = None
        if self.q <= 64 and self.k > 1:
            q = self.q
            tab = [0] * (q * q)
            for a in range(q):
                for b in range(a, q):
                    c = self._encode(_poly_mulmod(self._decode(a), self._decode(b), modulus, p))
                    tab[a * q + b] = tab[b * q + a] = c
            self._mul_table = tab

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    # integer codes <-> coefficient lists
    def _decode(self, code):
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    def _encode(self, coeffs):
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + (c % self.p)
        return code

    def _add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._encode([x + y for x, y in zip(self._decode(a), self._decode(b))])

    def _neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._encode([-x for x in self._decode(a)])

    def _mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a * self.q + b]
        return self._encode(_poly_mulmod(self._decode(a), self._decode(b), self.modulus, self.p))

    def __call__(self, value) -> FFElem:
        if isinstance(value, FFElem):
            if value.field is not self and value.field != self:
                raise ValueError("element of a different field")
            return value
        return FFElem(self, int(value) % self.p)

    def from_coeffs(self, coeffs) -> FFElem:
        coeffs = list(coeffs) + [0] * (self.k - len(coeffs))
        return FFElem(self, self._encode(coeffs[: self.k]))

    def gen(self) -> FFElem:
        if self.k == 1:
            raise ValueError("prime field has no polynomial generator")
        return self.from_coeffs([0, 1])

    def zero(self) -> FFElem:
        return FFElem(self, 0)

    def one(self) -> FFElem:
        return FFElem(self, 1)

    def elements(self):
        return [FFElem(self, c) for c in range(self.q)]

    def __iter__(self):
        return iter(self.elements())

    def __len__(self):
        return self.q


class FFElem:
    __slots__ = ("field", "code")

    def __init__(self, field: FiniteField, code: int):
        self.field = field
        self.code = code

    def _coerce(self, other):
        if isinstance(other, FFElem):
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field._add(self.code, o))

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.field, self.field._neg(self.code))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field._add(self.code, self.field._neg(o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field._mul(self.code, o))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = FFElem(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> FFElem:
        if self.code == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.code == other.code and self.field == other.field
        if isinstance(other, int):
            return self.code == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.code))

    def coeffs(self):
        return self.field._decode(self.code)

    def sqrt(self) -> FFElem | None:
        """A square root, or None.  In characteristic 2 this is the inverse Frobenius."""
        F = self.field
        if F.p == 2:
            return self ** (F.q // 2)
        for z in F:
            if z * z == self:
                return z
        return None

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.code}"
        terms = []
        for i, c in enumerate(self.coeffs()):
            if c:
                terms.append(f"{c if c != 1 or i == 0 else ''}{'g' if i == 1 else f'g^{i}' if i else ''}")
        return "+".join(terms) or "0"


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FiniteField:
    """Cached GF(p^k) with the lexicographically first irreducible modulus."""
    return FiniteField(p, k=k)


def embedding(src: FiniteField, dst: FiniteField):
    """A field embedding src -> dst as a dict on elements (exhaustive search).

    Requires src.k | dst.k and equal characteristic.
    """
    if src.p != dst.p or dst.k % src.k:
        raise ValueError(f"no embedding {src} -> {dst}")
    if src.k == 1:
        return {a: dst(a.code) for a in src}
    src.gen()
    # image of g: a root of the modulus of src inside dst
    for z in dst:
        acc = dst.zero()
        for c in reversed(src.modulus):
            acc = acc * z + c
        if acc.is_zero():
            images = {}
            for a in src:
                val = dst.zero()
                for c in reversed(a.coeffs()):
                    val = val * z + c
                images[a] = val
            return images
    raise AssertionError("modulus has no root in the larger field")  # unreachable for k | K


def poly_eval(coeffs, x):
    """Horner evaluation; coeffs low -> high."""
    acc = x.field.zero() if isinstance(x, FFElem) else 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def root_multiplicities(coeffs, field: FiniteField) -> dict:
    """Roots in ``field`` of a polynomial with coefficients in ``field``, with multiplicity."""
    coeffs = [field(c) if not isinstance(c, FFElem) else c for c in coeffs]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial has no finite root set")
    out = {}
    for z in field:
        poly = list(coeffs)
        mult = 0
        while len(poly) > 1:
            # synthetic division by (x - z)
            q = [field.zero()] * (len(poly) - 1)
            acc = field.zero()
            for i in range(len(poly) - 1, 0, -1):
                acc = acc * z + poly[i]
                q[i - 1] = acc
            rem = acc * z + poly[0]
            if not rem.is_zero():
                break
            mult += 1
            poly = q
        if mult:
            out[z] = mult
    return out
