"""Pure-Python versions of the hot loops.  The compiled module mirrors these exactly."""

from itertools import product


def _charpoly4_mod(A, p):
    """Characteristic polynomial of a 4x4 matrix mod p (Berkowitz), low -> high, monic."""
    n = 4
    # Berkowitz: build the Toeplitz vectors for leading submatrices
    c = [1]  # charpoly of the empty matrix, high -> low
    for k in range(n):
        a = A[k][k]
        R = [A[k][j] for j in range(k)]  # row to the left
        C = [A[i][k] for i in range(k)]  # column above
        # t = [1, -a, -R C, -R M C, ...] with M the leading k x k block
        t = [1, -a % p]
        v = C
        for _ in range(k):
            t.append(-sum(R[j] * v[j] for j in range(k)) % p)
            v = [sum(A[i][j] * v[j] for j in range(k)) % p for i in range(k)]
        new = [0] * (k + 2)
        for i in range(k + 2):
            s = 0
            for j in range(min(i, k) + 1):
                if i - j < len(t):
                    s += t[i - j] * c[j]
            new[i] = s % p
        c = new
    return c[::-1]


def _multiplicity_mod(poly, a, p):
    """Multiplicity of a as a root of poly (low -> high) mod p."""
    m = 0
    poly = list(poly)
    while len(poly) > 1:
        # synthetic division by (T - a)
        q = [0] * (len(poly) - 1)
        r = poly[-1]
        for i in range(len(poly) - 2, -1, -1):
            q[i] = r
            r = (poly[i] + r * a) % p
        if r:
            break
        m += 1
        poly = q
    return m


def _kron2(f, g, p):
    return [[f[i // 2][j // 2] * g[i % 2][j % 2] % p for j in range(4)] for i in range(4)]


def kron_lemma_scan(p):
    """Exhaustive check over all pairs of 2x2 matrices over F_p.

    Returns (pairs, triggered, both_scalar, single_eigenvalue, violations):
    triggered means some nonzero alpha in F_p has multiplicity > 2 in the
    characteristic polynomial of f (x) g; both_scalar counts triggered pairs where f
    and g are scalar with alpha equal to the product of the scalars; single_eigenvalue
    counts triggered pairs where f and g each have one eigenvalue but are not both
    scalar; violations counts everything else.
    """
    mats = [((a, b), (c, d)) for a, b, c, d in product(range(p), repeat=4)]
    # per-matrix data: scalar value (or -1), single eigenvalue (or -1)
    info = []
    for (a, b), (c, d) in mats:
        scalar = a if (b == 0 and c == 0 and a == d) else -1
        tr, det = (a + d) % p, (a * d - b * c) % p
        single = -1
        for lam in range(p):
            # (T - lam)^2 = T^2 - 2 lam T + lam^2
            if (2 * lam - tr) % p == 0 and (lam * lam - det) % p == 0:
                single = lam
                break
        info.append((scalar, single))
    pairs = triggered = both = single_only = violations = 0
    for fi, f in enumerate(mats):
        for gi, g in enumerate(mats):
            pairs += 1
            cp = _charpoly4_mod(_kron2(f, g, p), p)
            hit = -1
            for alpha in range(1, p):
                if _multiplicity_mod(cp, alpha, p) > 2:
                    hit = alpha
                    break
            if hit < 0:
                continue
            triggered += 1
            sf, ef = info[fi]
            sg, eg = info[gi]
            if sf >= 0 and sg >= 0 and sf * sg % p == hit:
                both += 1
            elif ef >= 0 and eg >= 0 and ef * eg % p == hit:
                single_only += 1
            else:
                violations += 1
    return pairs, triggered, both, single_only, violations


def quadratic_form_scan(M, bound):
    """True iff x^T M x < 0 for every nonzero integer vector with entries in [-bound, bound].

    Odometer walk over the box, updating y = M x and the form incrementally.
    """
    n = len(M)
    if n == 0:
        return True
    x = [-bound] * n
    y = [sum(M[i][j] * x[j] for j in range(n)) for i in range(n)]
    q = sum(x[i] * y[i] for i in range(n))
    while True:
        if q >= 0 and any(x):
            return False
        k = 0
        while k < n and x[k] == bound:
            # reset coordinate k from bound to -bound: delta = -2 bound
            d = -2 * bound
            q += 2 * d * y[k] + d * d * M[k][k]
            for i in range(n):
                y[i] += d * M[i][k]
            x[k] = -bound
            k += 1
        if k == n:
            return True
        q += 2 * y[k] + M[k][k]
        for i in range(n):
            y[i] += M[i][k]
        x[k] += 1
