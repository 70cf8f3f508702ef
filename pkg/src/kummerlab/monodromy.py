"""Exact linear algebra for monodromy questions: Kronecker products, characteristic
polynomials and eigenvalue multiplicities over Q or a prime field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels

MAX_DIM = 16


class ScalarError(ValueError):
    pass


# scalars: p = 0 means Q (Fractions), otherwise integers mod p

def _norm(x, p):
    return Fraction(x) if p == 0 else int(x) % p


def _inv(x, p):
    if p == 0:
        return 1 / Fraction(x)
    return pow(int(x), -1, p)


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple
    p: int = 0  # 0 for the rationals, else a prime

    @classmethod
    def of(cls, rows, p: int = 0) -> ExactMatrix:
        rows = tuple(tuple(_norm(x, p) for x in r) for r in rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square and nonempty")
        if len(rows) > MAX_DIM:
            raise ValueError(f"dimension {len(rows)} exceeds {MAX_DIM}")
        return cls(rows, p)

    @classmethod
    def identity(cls, n: int, p: int = 0) -> ExactMatrix:
        return cls.of([[1 if i == j else 0 for j in range(n)] for i in range(n)], p)

    @classmethod
    def diag(cls, values, p: int = 0) -> ExactMatrix:
        n = len(values)
        return cls.of([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], p)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other):
        n, p = self.n, self.p
        if isinstance(other, ExactMatrix):
            return ExactMatrix.of([[sum(self[i, k] * other[k, j] for k in range(n)) for j in range(n)]
                                   for i in range(n)], p)
        c = _norm(other, p)
        return ExactMatrix.of([[c * x for x in r] for r in self.rows], p)

    __rmul__ = __mul__

    def scalar_value(self):
        """The c with self = c*I, or None."""
        c = self[0, 0]
        for i in range(self.n):
            for j in range(self.n):
                if self[i, j] != (c if i == j else 0):
                    return None
        return c

    def is_scalar(self) -> bool:
        return self.scalar_value() is not None

    def charpoly(self) -> list:
        return charpoly(self)


def kronecker(f: ExactMatrix, g: ExactMatrix) -> ExactMatrix:
    if f.p != g.p:
        raise ValueError("matrices over different fields")
    m, n = f.n, g.n
    return ExactMatrix.of([[f[i // n, j // n] * g[i % n, j % n] for j in range(m * n)] for i in range(m * n)], f.p)


# polynomials are coefficient lists, low -> high

def charpoly(A: ExactMatrix) -> list:
    """det(T - A) by Berkowitz's division-free algorithm."""
    p, n = A.p, A.n
    c = [_norm(1, p)]  # high -> low
    for k in range(n):
        R = [A[k, j] for j in range(k)]
        v = [A[i, k] for i in range(k)]
        t = [_norm(1, p), _norm(-A[k, k], p)]
        for _ in range(k):
            t.append(_norm(-sum(R[j] * v[j] for j in range(k)), p))
            v = [sum(A[i, j] * v[j] for j in range(k)) for i in range(k)]
        c = [_norm(sum(t[i - j] * c[j] for j in range(min(i, k) + 1)), p) for i in range(k + 2)]
    return c[::-1]


def poly_mul(a, b, p=0) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return [_norm(x, p) for x in out]


def poly_from_roots(roots, p=0) -> list:
    out = [_norm(1, p)]
    for r in roots:
        out = poly_mul(out, [_norm(-r, p), 1], p)
    return out


def root_multiplicity(poly, alpha, p=0) -> int:
    alpha = _norm(alpha, p)
    poly = [_norm(x, p) for x in poly]
    m = 0
    while len(poly) > 1:
        q = [0] * (len(poly) - 1)
        r = poly[-1]
        for i in range(len(poly) - 2, -1, -1):
            q[i] = r
            r = _norm(poly[i] + r * alpha, p)
        if r != 0:
            break
        m += 1
        poly = q
    return m


def _derivative(poly, p):
    return [_norm(i * c, p) for i, c in enumerate(poly)][1:]


def _poly_divmod(a, b, p):
    a = [_norm(x, p) for x in a]
    lead = _inv(b[-1], p)
    q = [_norm(0, p)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        c = _norm(a[-1] * lead, p)
        s = len(a) - len(b)
        q[s] = c
        for i, x in enumerate(b):
            a[s + i] = _norm(a[s + i] - c * x, p)
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _poly_divmod(a, b, p)
        a, b = b, r
    lead = _inv(a[-1], p)
    return [_norm(x * lead, p) for x in a]


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _high_multiplicity_roots(poly, k, p):
    """Roots in the working field of multiplicity > k."""
    if p:
        return [a for a in range(p) if root_multiplicity(poly, a, p) > k]
    # over Q a root of multiplicity > deg/2 is unique and rational; in general take
    # gcd(P, P^(k)) whose roots are exactly those of multiplicity > k
    d = list(poly)
    for _ in range(k):
        d = _derivative(d, 0)
    if not _trim(d):
        return []
    G = _poly_gcd(poly, d, 0)
    deg = len(G) - 1
    if deg == 0:
        return []
    cand = -G[-2] / deg  # G = (T - alpha)^deg when there is a single such root
    return [cand] if poly_from_roots([cand] * deg) == G else []


def max_root_multiplicity(poly, p=0) -> int:
    """Largest multiplicity of a root: over the algebraic closure for Q, in F_p otherwise."""
    if p:
        return max((root_multiplicity(poly, a, p) for a in range(p)), default=0)
    best, d = 0, list(poly)
    while len(_trim(d)) > 1:
        if len(_poly_gcd(poly, d, 0)) > 1 or best == 0:
            best += 1
        else:
            break
        d = _derivative(d, 0)
    return best


# the lemma ----------------------------------------------------------------------

BOTH_HOMOTHETIES = "BothHomotheties"
SINGLE_EIGENVALUE = "SingleEigenvalue"
NOT_TRIGGERED = "NotTriggered"


@dataclass(frozen=True)
class HomothetyVerdict:
    outcome: str
    alpha: object = None
    multiplicity: int = 0
    threshold: int = 0
    f_value: object = None  # the scalar (or the single eigenvalue) of f
    g_value: object = None

    def to_json(self) -> dict:
        return {"outcome": self.outcome, "alpha": str(self.alpha), "multiplicity": self.multiplicity,
                "threshold": self.threshold, "f": str(self.f_value), "g": str(self.g_value)}


def single_eigenvalue(A: ExactMatrix):
    """The lambda with charpoly (T - lambda)^n in the working field, or None."""
    cp = charpoly(A)
    for lam in _high_multiplicity_roots(cp, A.n - 1, A.p):
        return lam
    return None


def homothety_criterion(f: ExactMatrix, g: ExactMatrix, alpha=None) -> HomothetyVerdict:
    """Test whether some eigenvalue alpha != 0 of f (x) g has multiplicity > mn - min(m, n).

    When it does, f and g each have a single eigenvalue (lambda, mu) with lambda mu = alpha.
    They are genuine homotheties only when they are also semisimple; a unipotent factor
    triggers the criterion too, which is reported as SingleEigenvalue.
    """
    m, n = f.n, g.n
    p = f.p
    K = kronecker(f, g)
    cp = charpoly(K)
    k = m * n - min(m, n)
    if alpha is not None:
        alpha = _norm(alpha, p)
        if alpha == 0:
            raise ScalarError("alpha must be nonzero")
        cands = [alpha]
    else:
        cands = [a for a in _high_multiplicity_roots(cp, k, p) if a != 0]
    for a in cands:
        mult = root_multiplicity(cp, a, p)
        if mult <= k:
            continue
        sf, sg = f.scalar_value(), g.scalar_value()
        if sf is not None and sg is not None:
            if _norm(sf * sg, p) != a:
                raise AssertionError("scalars do not multiply to alpha")
            return HomothetyVerdict(BOTH_HOMOTHETIES, a, mult, k, sf, sg)
        lf, lg = single_eigenvalue(f), single_eigenvalue(g)
        if lf is None or lg is None or _norm(lf * lg, p) != a:
            raise AssertionError("criterion triggered without single eigenvalues")
        return HomothetyVerdict(SINGLE_EIGENVALUE, a, mult, k, lf, lg)
    if alpha is not None:
        best = root_multiplicity(cp, alpha, p)
    else:
        best = max_root_multiplicity(cp, p)
    return HomothetyVerdict(NOT_TRIGGERED, alpha, best, k)


@dataclass(frozen=True)
class LemmaScan:
    p: int
    pairs: int
    triggered: int
    both_scalar: int
    single_eigenvalue: int
    violations: int

    @property
    def holds(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        return {"p": self.p, "pairs": self.pairs, "triggered": self.triggered, "both_scalar": self.both_scalar,
                "single_eigenvalue": self.single_eigenvalue, "violations": self.violations}


def exhaustive_lemma_scan(p: int) -> LemmaScan:
    """All pairs of 2x2 matrices over F_p (p^8 of them)."""
    return LemmaScan(p, *kernels.kron_lemma_scan(p))


# D4 permutation representation ------------------------------------------------------

FIXES_BOTH_LEGS = "FixesBothLegs"
SWAPS_LEGS = "SwapsLegs"

# action on the four leaves of the D4 star; the swap exchanges the two legs of one pair
_PERMUTATIONS = {
    FIXES_BOTH_LEGS: (0, 1, 2, 3),
    SWAPS_LEGS: (0, 1, 3, 2),
}


def d4_representation_matrix(case: str, alpha, p: int = 0) -> ExactMatrix:
    if case not in _PERMUTATIONS:
        raise ValueError(f"unknown case {case!r}")
    alpha = _norm(alpha, p)
    if alpha == 0:
        raise ScalarError("alpha must be nonzero")
    perm = _PERMUTATIONS[case]
    P = ExactMatrix.of([[1 if perm[j] == i else 0 for j in range(4)] for i in range(4)], p)
    return P * alpha


def d4_monodromy_charpoly(case: str, alpha, p: int = 0) -> list:
    return charpoly(d4_representation_matrix(case, alpha, p))


def swap_case_chain(alpha, p: int = 0) -> dict:
    """Follow the argument that rules out the leg swap for a Kronecker product of 2x2 factors.

    The swap charpoly has alpha with multiplicity 3 > 4 - min(2, 2), so the criterion
    applies and both factors have a single eigenvalue; their product then has
    charpoly (T - alpha)^4, which differs from the swap charpoly whenever alpha != -alpha.
    """
    alpha = _norm(alpha, p)
    swap = d4_monodromy_charpoly(SWAPS_LEGS, alpha, p)
    mult = root_multiplicity(swap, alpha, p)
    threshold = 4 - 2
    forced = poly_from_roots([alpha] * 4, p)
    return {"swap_charpoly": swap, "multiplicity": mult, "threshold": threshold,
            "triggered": mult > threshold, "forced_charpoly": forced, "swap_excluded": forced != swap}


def format_poly(poly, var="T") -> str:
    terms = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            terms.append(mono)
        elif mono and c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}{'*' + mono if mono else ''}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


__all__ = [
    "ExactMatrix", "HomothetyVerdict", "LemmaScan", "ScalarError", "kronecker", "charpoly",
    "poly_mul", "poly_from_roots", "root_multiplicity", "max_root_multiplicity", "homothety_criterion", "single_eigenvalue",
    "exhaustive_lemma_scan", "d4_representation_matrix", "d4_monodromy_charpoly", "swap_case_chain", "format_poly",
    "BOTH_HOMOTHETIES", "SINGLE_EIGENVALUE", "NOT_TRIGGERED", "FIXES_BOTH_LEGS", "SWAPS_LEGS",
]
