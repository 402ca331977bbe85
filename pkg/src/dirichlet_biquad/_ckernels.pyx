# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_kernels_py``.

Arithmetic is done in 64-bit C integers. Every entry point checks that its
inputs keep all intermediates below 2**62 and otherwise hands the call to
the pure-Python implementation, so results never depend on wraparound.
"""
from libc.math cimport sqrt

from . import _kernels_py as _py

cdef long long SMALL = 1LL << 40     # bound on |D| and on n for the CF loops
cdef long long COEF = 1LL << 20      # bound on |a|, |b|, |c| of forms fed to reduction
cdef long long CCOEF = 1LL << 15     # compose: Bezout factors reach |a|*|b|, products ~ D**2
cdef long long CDISC = 1LL << 31


cdef inline long long llabs_(long long x) nogil:
    return -x if x < 0 else x


cdef inline long long pymod(long long a, long long m) nogil:
    cdef long long r = a % m
    if r < 0:
        r += m
    return r


cdef inline long long pydiv(long long a, long long m) nogil:
    # floor division for m > 0
    cdef long long q = a / m
    if (a % m != 0) and (a < 0):
        q -= 1
    return q


cdef long long c_isqrt(long long n) nogil:
    cdef long long r = <long long>sqrt(<double>n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


cdef int c_jacobi_kron(long long a, long long b) nogil:
    cdef int k = 1
    cdef int v = 0
    cdef long long t
    if b == 0:
        return 1 if (a == 1 or a == -1) else 0
    if (a & 1) == 0 and (b & 1) == 0:
        return 0
    while (b & 1) == 0:
        b >>= 1
        v += 1
    if (v & 1) and ((a & 7) == 3 or (a & 7) == 5):
        k = -k
    if b < 0:
        b = -b
        if a < 0:
            k = -k
    a = pymod(a, b)
    while a != 0:
        while (a & 1) == 0:
            a >>= 1
            if (b & 7) == 3 or (b & 7) == 5:
                k = -k
        t = a
        a = b
        b = t
        if a & b & 2:
            k = -k
        a = a % b
    return k if b == 1 else 0


def kronecker(a, b):
    if -SMALL < a < SMALL and -SMALL < b < SMALL:
        return c_jacobi_kron(a, b)
    return _py.kronecker(a, b)


cdef int c_gf2_rank(unsigned long long* rows, int t) nogil:
    cdef int rank = 0
    cdef int col, i
    cdef unsigned long long bit, tmp
    for col in range(64):
        bit = 1ULL << col
        for i in range(rank, t):
            if rows[i] & bit:
                tmp = rows[i]
                rows[i] = rows[rank]
                rows[rank] = tmp
                break
        else:
            continue
        for i in range(t):
            if i != rank and (rows[i] & bit):
                rows[i] ^= rows[rank]
        rank += 1
        if rank == t:
            break
    return rank


def gf2_rank(rows):
    cdef unsigned long long buf[64]
    cdef int t = len(rows)
    cdef int i
    if t > 64 or any(r < 0 or r >> 64 for r in rows):
        return _py.gf2_rank(rows)
    for i in range(t):
        buf[i] = rows[i]
    return c_gf2_rank(buf, t)


def redei_rows(discs, primes):
    cdef int t = len(discs)
    cdef int i, j, col
    if t > 64:
        return _py.redei_rows(discs, primes)
    for i in range(t):
        if not (-SMALL < discs[i] < SMALL and 0 < primes[i] < SMALL):
            return _py.redei_rows(discs, primes)
    cdef long long d[64]
    cdef long long p[64]
    cdef unsigned long long rows[64]
    for i in range(t):
        d[i] = discs[i]
        p[i] = primes[i]
        rows[i] = 0
    for j in range(t):
        col = 0
        for i in range(t):
            if i != j and c_jacobi_kron(d[i], p[j]) == -1:
                rows[i] |= 1ULL << j
                col ^= 1
        if col:
            rows[j] |= 1ULL << j
    return [rows[i] for i in range(t)]


def redei_corank(discs, primes):
    cdef int t = len(discs)
    cdef int i
    cdef unsigned long long buf[64]
    r = redei_rows(discs, primes)
    if t > 64:
        return _py.redei_corank(discs, primes)
    for i in range(t):
        buf[i] = r[i]
    return t - 1 - c_gf2_rank(buf, t)


def cf_period(n):
    if not (1 < n < SMALL):
        return _py.cf_period(n)
    cdef long long N = n
    cdef long long a0 = c_isqrt(N)
    if a0 * a0 == N:
        raise ValueError("perfect square")
    cdef long long P = a0, Q = N - a0 * a0
    cdef long long P1 = P, Q1 = Q, a
    cdef long long k = 1
    with nogil:
        while True:
            a = (a0 + P) / Q
            P = a * Q - P
            Q = (N - P * P) / Q
            if P == P1 and Q == Q1:
                break
            k += 1
    return k


def cf_pm2_index(n):
    if not (1 < n < SMALL):
        return _py.cf_pm2_index(n)
    cdef long long N = n
    cdef long long a0 = c_isqrt(N)
    if a0 * a0 == N:
        raise ValueError("perfect square")
    cdef long long P = a0, Q = N - a0 * a0
    cdef long long P1 = P, Q1 = Q, a
    cdef long long k = 0
    with nogil:
        while True:
            if Q == 2:
                break
            a = (a0 + P) / Q
            P = a * Q - P
            Q = (N - P * P) / Q
            k += 1
            if P == P1 and Q == Q1:
                k = -1
                break
    return k


cdef inline void c_reduce_definite(long long* f) nogil:
    cdef long long a = f[0], b = f[1], c = f[2], r, t
    while True:
        if b > a or b <= -a:
            r = pydiv(a - b, 2 * a)
            c = a * r * r + b * r + c
            b += 2 * r * a
        if a > c:
            t = a
            a = c
            c = t
            b = -b
            continue
        if a == c and b < 0:
            b = -b
        break
    f[0] = a
    f[1] = b
    f[2] = c


cdef inline bint _small_form(a, b, c):
    return -COEF < a < COEF and -COEF < b < COEF and -COEF < c < COEF


def reduce_definite(a, b, c):
    if not _small_form(a, b, c):
        return _py.reduce_definite(a, b, c)
    cdef long long f[3]
    f[0] = a
    f[1] = b
    f[2] = c
    c_reduce_definite(f)
    return f[0], f[1], f[2]


cdef inline void c_rho(long long* f, long long D, long long s) nogil:
    cdef long long a = f[0], b = f[1], c = f[2]
    cdef long long m = llabs_(c), m2 = 2 * m, r
    if m > s:
        r = pymod(-b, m2)
        if r > m:
            r -= m2
    else:
        r = s - pymod(s + b, m2)
    f[0] = c
    f[1] = r
    f[2] = (r * r - D) / (4 * c)


cdef inline bint c_is_reduced_indef(long long a, long long b, long long s) nogil:
    cdef long long m = llabs_(a)
    return 0 < b <= s and b + 2 * m > s and 2 * m - b <= s


def rho(a, b, c, D, s):
    if not (_small_form(a, b, c) and 0 < D < SMALL):
        return _py.rho(a, b, c, D, s)
    cdef long long f[3]
    f[0] = a
    f[1] = b
    f[2] = c
    c_rho(f, D, s)
    return f[0], f[1], f[2]


def is_reduced_indefinite(a, b, s):
    return _py.is_reduced_indefinite(a, b, s)


def reduce_indefinite(a, b, c, D, s):
    if not (_small_form(a, b, c) and 0 < D < SMALL):
        return _py.reduce_indefinite(a, b, c, D, s)
    cdef long long f[3]
    cdef long long DD = D, ss = s
    f[0] = a
    f[1] = b
    f[2] = c
    with nogil:
        while not c_is_reduced_indef(f[0], f[1], ss):
            c_rho(f, DD, ss)
    return f[0], f[1], f[2]


cdef inline void c_xgcd(long long a, long long b, long long* out) nogil:
    cdef long long x0 = 1, x1 = 0, y0 = 0, y1 = 1, q, r, t
    while b != 0:
        # floor quotient for either sign of b
        q = a / b
        if (a % b != 0) and ((a < 0) != (b < 0)):
            q -= 1
        r = a - q * b
        a = b
        b = r
        t = x0 - q * x1
        x0 = x1
        x1 = t
        t = y0 - q * y1
        y0 = y1
        y1 = t
    if a < 0:
        out[0] = -a
        out[1] = -x0
        out[2] = -y0
    else:
        out[0] = a
        out[1] = x0
        out[2] = y0


def xgcd(a, b):
    return _py.xgcd(a, b)


def compose(a1, b1, c1, a2, b2, c2):
    if not (-CCOEF < a1 < CCOEF and -CCOEF < b1 < CCOEF and -CCOEF < a2 < CCOEF
            and -CCOEF < b2 < CCOEF and -SMALL < c1 < SMALL and -SMALL < c2 < SMALL):
        return _py.compose(a1, b1, c1, a2, b2, c2)
    cdef long long A1 = a1, B1 = b1, C1 = c1, A2 = a2, B2 = b2, C2 = c2
    cdef long long D = B1 * B1 - 4 * A1 * C1
    if not (-CDISC < D < CDISC):
        return _py.compose(a1, b1, c1, a2, b2, c2)
    cdef long long beta = (B1 + B2) / 2
    cdef long long r1[3]
    cdef long long r2[3]
    c_xgcd(A1, A2, r1)
    c_xgcd(r1[0], beta, r2)
    cdef long long g = r2[0]
    cdef long long u = r2[1] * r1[1], v = r2[1] * r1[2], w = r2[2]
    cdef long long a3 = (A1 / g) * (A2 / g)
    cdef long long b3 = (u * A1 * B2 + v * A2 * B1 + w * ((B1 * B2 + D) / 2)) / g
    cdef long long m = llabs_(a3)
    b3 = pymod(b3, 2 * m)
    if b3 > m:
        b3 -= 2 * m
    return a3, b3, (b3 * b3 - D) / (4 * a3)


def definite_reduced_forms(D):
    if not (-SMALL < D < 0):
        return _py.definite_reduced_forms(D)
    cdef long long DD = D
    cdef long long bmax = c_isqrt(-DD / 3)
    cdef long long b, m, a, c, amax
    out = []
    b = DD & 1
    while b <= bmax:
        m = (b * b - DD) / 4
        amax = c_isqrt(m)
        a = b if b > 1 else 1
        while a <= amax:
            if m % a == 0:
                c = m / a
                out.append((a, b, c))
                if 0 < b and b < a and a < c:
                    out.append((a, -b, c))
            a += 1
        b += 2
    return out


def indefinite_reduced_forms(D):
    if not (0 < D < SMALL):
        return _py.indefinite_reduced_forms(D)
    cdef long long DD = D
    cdef long long s = c_isqrt(DD)
    cdef long long b, m, A, C
    out = []
    b = 1 if DD & 1 else 2
    while b <= s:
        m = (DD - b * b) / 4
        A = (s - b) / 2 + 1
        while A <= (s + b) / 2:
            if m % A == 0:
                C = m / A
                out.append((A, b, -C))
                out.append((-A, b, C))
            A += 1
        b += 2
    return out


def indefinite_cycles(D):
    if not (0 < D < SMALL):
        return _py.indefinite_cycles(D)
    cdef long long DD = D
    cdef long long s = c_isqrt(DD)
    cdef long long f[3]
    forms = indefinite_reduced_forms(D)
    index = {fm: i for i, fm in enumerate(forms)}
    cdef Py_ssize_t nf = len(forms), i, j, rep
    labels = [-1] * nf
    for i in range(nf):
        if labels[i] >= 0:
            continue
        a0, b0, c0 = forms[i]
        cyc = [i]
        rep = i
        f[0] = a0
        f[1] = b0
        f[2] = c0
        c_rho(f, DD, s)
        while not (f[0] == a0 and f[1] == b0 and f[2] == c0):
            j = index[(f[0], f[1], f[2])]
            cyc.append(j)
            if forms[j] < forms[rep]:
                rep = j
            c_rho(f, DD, s)
        for j in cyc:
            labels[j] = rep
    return forms, labels
