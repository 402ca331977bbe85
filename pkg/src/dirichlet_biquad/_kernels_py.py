"""Pure-Python hot kernels.

Every function here has a twin of the same name and signature in the
compiled ``_ckernels`` extension; :mod:`dirichlet_biquad.kernels` picks one
at import time. Forms are passed as plain ``(a, b, c)`` integers, never as
objects, to keep call overhead flat.
"""
from math import isqrt


def kronecker(a, b):
    if b == 0:
        return 1 if a in (1, -1) else 0
    if not (a & 1) and not (b & 1):
        return 0
    k = 1
    v = 0
    while not (b & 1):
        b >>= 1
        v += 1
    if v & 1 and (a & 7) in (3, 5):
        k = -k
    if b < 0:
        b = -b
        if a < 0:
            k = -k
    # Jacobi symbol, b odd and positive
    a %= b
    while a:
        while not (a & 1):
            a >>= 1
            if (b & 7) in (3, 5):
                k = -k
        a, b = b, a
        if a & b & 2:
            k = -k
        a %= b
    return k if b == 1 else 0


def gf2_rank(rows):
    """Rank over GF(2) of a matrix given as integer bitmask rows."""
    basis = []
    for r in rows:
        for v in basis:
            r = min(r, r ^ v)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return len(basis)


def redei_rows(discs, primes):
    """Bitmask rows of the Redei matrix; entry (i, j) is bit j of row i.

    Off-diagonal (i, j) is 1 iff (D_i | p_j) = -1; the diagonal makes every
    column sum to zero.
    """
    t = len(discs)
    rows = [0] * t
    for j in range(t):
        p = primes[j]
        col = 0
        for i in range(t):
            if i != j and kronecker(discs[i], p) == -1:
                rows[i] |= 1 << j
                col ^= 1
        if col:
            rows[j] |= 1 << j
    return rows


def redei_corank(discs, primes):
    """t - 1 - rank of the Redei matrix (the 4-rank of the narrow group)."""
    return len(discs) - 1 - gf2_rank(redei_rows(discs, primes))


def cf_period(n):
    """Period length of the continued fraction of sqrt(n), n not a square."""
    a0 = isqrt(n)
    if a0 * a0 == n:
        raise ValueError("perfect square")
    P = a0
    Q = n - a0 * a0
    first = (P, Q)
    k = 1
    while True:
        a = (a0 + P) // Q
        P = a * Q - P
        Q = (n - P * P) // Q
        if P == first[0] and Q == first[1]:
            return k
        k += 1


def cf_pm2_index(n):
    """First k with p_k^2 - n q_k^2 = +-2 over one period, else -1.

    The value at the k-th convergent is (-1)^(k+1) Q_{k+1}, so this is the
    first k with Q_{k+1} = 2.
    """
    a0 = isqrt(n)
    if a0 * a0 == n:
        raise ValueError("perfect square")
    P = a0
    Q = n - a0 * a0
    P1, Q1 = P, Q
    k = 0
    while True:
        if Q == 2:
            return k
        a = (a0 + P) // Q
        P = a * Q - P
        Q = (n - P * P) // Q
        k += 1
        if P == P1 and Q == Q1:
            return -1


def reduce_definite(a, b, c):
    while True:
        if b > a or b <= -a:
            r = (a - b) // (2 * a)
            c = a * r * r + b * r + c
            b += 2 * r * a
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return a, b, c


def rho(a, b, c, D, s):
    """One step of the indefinite reduction operator; s = isqrt(D)."""
    m = c if c > 0 else -c
    m2 = 2 * m
    if m > s:
        r = (-b) % m2
        if r > m:
            r -= m2
    else:
        r = s - (s + b) % m2
    return c, r, (r * r - D) // (4 * c)


def is_reduced_indefinite(a, b, s):
    m = a if a > 0 else -a
    return 0 < b <= s and b + 2 * m > s and 2 * m - b <= s


def reduce_indefinite(a, b, c, D, s):
    while not is_reduced_indefinite(a, b, s):
        a, b, c = rho(a, b, c, D, s)
    return a, b, c


def xgcd(a, b):
    """(g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def compose(a1, b1, c1, a2, b2, c2):
    """Dirichlet composition of two primitive forms of equal discriminant.

    The result is normalized (-|a3| < b3 <= |a3|) but not reduced.
    """
    D = b1 * b1 - 4 * a1 * c1
    beta = (b1 + b2) // 2
    g1, x, y = xgcd(a1, a2)
    g, s, t = xgcd(g1, beta)
    u = s * x
    v = s * y
    a3 = (a1 // g) * (a2 // g)
    b3 = (u * a1 * b2 + v * a2 * b1 + t * ((b1 * b2 + D) // 2)) // g
    m = a3 if a3 > 0 else -a3
    b3 %= 2 * m
    if b3 > m:
        b3 -= 2 * m
    return a3, b3, (b3 * b3 - D) // (4 * a3)


def definite_reduced_forms(D):
    """All reduced positive definite forms of discriminant D < 0."""
    out = []
    bmax = isqrt(-D // 3)
    for b in range(D & 1, bmax + 1, 2):
        m = (b * b - D) // 4
        for a in range(max(b, 1), isqrt(m) + 1):
            if m % a == 0:
                c = m // a
                out.append((a, b, c))
                if 0 < b < a < c:
                    out.append((a, -b, c))
    return out


def indefinite_reduced_forms(D):
    """All reduced indefinite forms of discriminant D > 0 (non-square)."""
    s = isqrt(D)
    out = []
    start = 1 if D & 1 else 2
    for b in range(start, s + 1, 2):
        m = (D - b * b) // 4
        for A in range((s - b) // 2 + 1, (s + b) // 2 + 1):
            if m % A == 0:
                C = m // A
                out.append((A, b, -C))
                out.append((-A, b, C))
    return out


def indefinite_cycles(D):
    """Partition the reduced forms of D into rho-cycles.

    Returns ``(forms, labels)`` where ``labels[i]`` is the index (into
    ``forms``) of the smallest form of the cycle containing ``forms[i]``.
    """
    s = isqrt(D)
    forms = indefinite_reduced_forms(D)
    index = {f: i for i, f in enumerate(forms)}
    labels = [-1] * len(forms)
    for i, f in enumerate(forms):
        if labels[i] >= 0:
            continue
        cyc = [i]
        a, b, c = rho(*f, D, s)
        while (a, b, c) != f:
            cyc.append(index[(a, b, c)])
            a, b, c = rho(a, b, c, D, s)
        rep = min(cyc, key=forms.__getitem__)
        for j in cyc:
            labels[j] = rep
    return forms, labels
