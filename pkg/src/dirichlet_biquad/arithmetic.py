"""Integer substrate: sieve, odd squarefree factorization, Kronecker symbol,
sums of two squares and divisors in the Gaussian integers."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import product
from math import isqrt

import numpy as np

from . import kernels
from .config import settings
from .errors import BadInput, NotOddSquarefree, ResourceLimit

kronecker = kernels.kronecker


def spf_table(limit: int) -> np.ndarray:
    """Smallest-prime-factor table ``spf[m]`` for ``0 <= m <= limit``."""
    if limit > settings.sieve_limit:
        raise ResourceLimit(
            f"sieve limit {limit} exceeds budget of {settings.sieve_memory_budget} bytes"
        )
    spf = np.arange(limit + 1, dtype=np.int32)
    spf[0:2] = 1
    spf[4::2] = 2
    for p in range(3, isqrt(limit) + 1, 2):
        if spf[p] == p:
            block = spf[p * p :: p]
            np.minimum(block, p, out=block)
    return spf


class _SharedSieve:
    """Lazily grown smallest-prime-factor table, read-only once built."""

    def __init__(self):
        self._lock = threading.Lock()
        self.limit = 0
        self.spf: list[int] = []

    def ensure(self, n: int) -> list[int]:
        if n <= self.limit:
            return self.spf
        with self._lock:
            if n > self.limit:
                if n > settings.sieve_limit:
                    raise ResourceLimit(f"{n} is beyond the sieve limit {settings.sieve_limit}")
                new = min(max(2 * self.limit, 1 << 16, n), settings.sieve_limit)
                self.spf = spf_table(new).tolist()
                self.limit = new
        return self.spf


_sieve = _SharedSieve()


def factorize(m: int) -> list[tuple[int, int]]:
    """Prime factorization of ``1 <= m`` as ``[(p, e), ...]``, ascending."""
    if m < 1:
        raise BadInput(f"cannot factor {m}")
    out = []
    e = (m & -m).bit_length() - 1
    if e:
        out.append((2, e))
        m >>= e
    spf = _sieve.ensure(m)
    while m > 1:
        p = spf[m]
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        out.append((p, e))
    return out


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % d for d in range(3, isqrt(p) + 1, 2))


@dataclass(frozen=True)
class FactoredOddSquarefree:
    n: int
    primes: tuple[int, ...]
    omega: int
    omega1: int
    omega3: int
    has_p5mod8: bool

    @classmethod
    def from_primes(cls, primes) -> FactoredOddSquarefree:
        primes = tuple(primes)
        n = 1
        for p in primes:
            n *= p
        omega1 = sum(1 for p in primes if p % 4 == 1)
        return cls(
            n=n,
            primes=primes,
            omega=len(primes),
            omega1=omega1,
            omega3=len(primes) - omega1,
            has_p5mod8=any(p % 8 == 5 for p in primes),
        )


def factor_odd_squarefree(n: int) -> FactoredOddSquarefree:
    if n <= 1 or n % 2 == 0:
        raise NotOddSquarefree(f"{n} is not an odd integer > 1")
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        raise NotOddSquarefree(f"{n} is not squarefree")
    return FactoredOddSquarefree.from_primes(p for p, _ in fac)


def sieve_odd_squarefree(limit: int, start: int = 3):
    """Yield every odd squarefree ``start <= n <= limit`` in ascending order."""
    if limit < 3:
        raise BadInput("limit must be at least 3")
    spf = _sieve.ensure(limit)
    for n in range(max(start, 3) | 1, limit + 1, 2):
        primes = []
        m = n
        while m > 1:
            p = spf[m]
            m //= p
            if m % p == 0:
                break
            primes.append(p)
        else:
            yield FactoredOddSquarefree.from_primes(primes)


def two_squares(p: int) -> tuple[int, int]:
    """The representation p = a^2 + b^2 with a odd and b > 0 (even)."""
    if p % 4 != 1 or not is_prime(p):
        raise BadInput(f"{p} is not a prime congruent to 1 mod 4")
    # square root of -1 from any quadratic non-residue
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    x = pow(c, (p - 1) // 4, p)
    a, b = p, x
    r = isqrt(p)
    while b > r:
        a, b = b, a % b
    u, v = b, isqrt(p - b * b)
    if u % 2 == 0:
        u, v = v, u
    return u, v


@dataclass(frozen=True)
class GaussianInteger:
    re: int
    im: int

    def __mul__(self, other: GaussianInteger) -> GaussianInteger:
        return GaussianInteger(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> GaussianInteger:
        return GaussianInteger(self.re, -self.im)

    def divides(self, m: int) -> bool:
        """True iff m / self lies in Z[i] (m a rational integer)."""
        nrm = self.norm()
        return nrm != 0 and (m * self.re) % nrm == 0 and (m * self.im) % nrm == 0

    def is_pm1_mod4(self) -> bool:
        return self.im % 4 == 0 and self.re % 4 in (1, 3)


UNITS = (
    GaussianInteger(1, 0),
    GaussianInteger(0, 1),
    GaussianInteger(-1, 0),
    GaussianInteger(0, -1),
)


def gaussian_divisors(fn: FactoredOddSquarefree) -> list[GaussianInteger]:
    """Every divisor of n in Z[i], all four associates included."""
    log2_count = 2 * fn.omega1 + fn.omega3 + 2
    if log2_count > settings.gaussian_divisor_log2_bound:
        raise ResourceLimit(f"{2 ** log2_count} Gaussian divisors requested")
    choices = []
    for p in fn.primes:
        if p % 4 == 1:
            a, b = two_squares(p)
            pi = GaussianInteger(a, b)
            choices.append((UNITS[0], pi, pi.conjugate(), GaussianInteger(p, 0)))
        else:
            choices.append((UNITS[0], GaussianInteger(p, 0)))
    out = []
    for combo in product(UNITS, *choices):
        beta = combo[0]
        for factor in combo[1:]:
            beta = beta * factor
        out.append(beta)
    return out
