# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops; same algorithms as _pykernels."""


cdef inline long _mod(long a, long p):
    a %= p
    return a + p if a < 0 else a


cdef void _charpoly4(long[4][4] A, long p, long* out):
    # Berkowitz, result written low -> high into out[0..4]
    cdef long c[5]
    cdef long new[5]
    cdef long t[6]
    cdef long v[4]
    cdef long w[4]
    cdef int k, i, j, r, clen = 1
    cdef long s
    c[0] = 1
    for k in range(4):
        t[0] = 1
        t[1] = _mod(-A[k][k], p)
        for i in range(k):
            v[i] = A[i][k]
        for r in range(k):
            s = 0
            for j in range(k):
                s += A[k][j] * v[j]
            t[2 + r] = _mod(-s, p)
            for i in range(k):
                s = 0
                for j in range(k):
                    s += A[i][j] * v[j]
                w[i] = s % p
            for i in range(k):
                v[i] = w[i]
        for i in range(k + 2):
            s = 0
            for j in range(min(i, k) + 1):
                if i - j < k + 2:
                    s += t[i - j] * c[j]
            new[i] = s % p
        for i in range(k + 2):
            c[i] = new[i]
    for i in range(5):
        out[i] = c[4 - i]


cdef int _multiplicity(long* poly, int deg, long a, long p):
    cdef long q[5]
    cdef long buf[5]
    cdef int m = 0, i
    cdef long r
    for i in range(deg + 1):
        buf[i] = poly[i]
    while deg > 0:
        r = buf[deg]
        for i in range(deg - 1, -1, -1):
            q[i] = r
            r = (buf[i] + r * a) % p
        if r != 0:
            break
        m += 1
        deg -= 1
        for i in range(deg + 1):
            buf[i] = q[i]
    return m


def kron_lemma_scan(long p):
    cdef long n = p * p * p * p
    cdef long fi, gi, alpha, lam, a, b, c, d, tr, det, hit
    cdef long pairs = 0, triggered = 0, both = 0, single_only = 0, violations = 0
    cdef long[4][4] K
    cdef long cp[5]
    cdef int i, j
    cdef long f[4]
    cdef long g[4]
    scal = [0] * n
    sing = [0] * n
    ents = []
    for fi in range(n):
        a = fi // (p * p * p)
        b = (fi // (p * p)) % p
        c = (fi // p) % p
        d = fi % p
        ents.append((a, b, c, d))
        scal[fi] = a if (b == 0 and c == 0 and a == d) else -1
        tr = (a + d) % p
        det = _mod(a * d - b * c, p)
        sing[fi] = -1
        for lam in range(p):
            if _mod(2 * lam - tr, p) == 0 and _mod(lam * lam - det, p) == 0:
                sing[fi] = lam
                break
    for fi in range(n):
        f[0], f[1], f[2], f[3] = ents[fi]
        for gi in range(n):
            g[0], g[1], g[2], g[3] = ents[gi]
            pairs += 1
            for i in range(4):
                for j in range(4):
                    K[i][j] = (f[(i // 2) * 2 + j // 2] * g[(i % 2) * 2 + j % 2]) % p
            _charpoly4(K, p, cp)
            hit = -1
            for alpha in range(1, p):
                if _multiplicity(cp, 4, alpha, p) > 2:
                    hit = alpha
                    break
            if hit < 0:
                continue
            triggered += 1
            if scal[fi] >= 0 and scal[gi] >= 0 and (scal[fi] * scal[gi]) % p == hit:
                both += 1
            elif sing[fi] >= 0 and sing[gi] >= 0 and (sing[fi] * sing[gi]) % p == hit:
                single_only += 1
            else:
                violations += 1
    return pairs, triggered, both, single_only, violations


def quadratic_form_scan(M, long bound):
    cdef int n = len(M)
    cdef int i, k
    cdef long q, d
    if n == 0:
        return True
    if n > 32:
        raise ValueError("at most 32 vertices")
    cdef long[32][32] A
    cdef long x[32]
    cdef long y[32]
    cdef bint nonzero
    for i in range(n):
        for k in range(n):
            A[i][k] = M[i][k]
    for i in range(n):
        x[i] = -bound
    for i in range(n):
        y[i] = 0
        for k in range(n):
            y[i] += A[i][k] * x[k]
    q = 0
    for i in range(n):
        q += x[i] * y[i]
    while True:
        if q >= 0:
            nonzero = False
            for i in range(n):
                if x[i] != 0:
                    nonzero = True
                    break
            if nonzero:
                return False
        k = 0
        while k < n and x[k] == bound:
            d = -2 * bound
            q += 2 * d * y[k] + d * d * A[k][k]
            for i in range(n):
                y[i] += d * A[i][k]
            x[k] = -bound
            k += 1
        if k == n:
            return True
        q += 2 * y[k] + A[k][k]
        for i in range(n):
            y[i] += A[i][k]
        x[k] += 1
