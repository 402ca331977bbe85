"""Continued fractions of sqrt(n), fundamental unit norms, the equation
c^2 - n e^2 = +-2 and the Hasse unit index of Q(sqrt(n), sqrt(-n))."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from . import kernels
from .errors import InvalidWitness, PerfectSquare, PreconditionViolated


@dataclass(frozen=True)
class PellData:
    n: int
    period: int
    partial_quotients: tuple[int, ...]  # a_0, a_1, ..., a_period
    q_values: tuple[tuple[int, int], ...]  # (sign, Q_{k+1}) for k = 0 .. period-1
    unit_norm: int

    def convergent_values(self) -> list[int]:
        """p_k^2 - n q_k^2 for k = 0 .. period-1."""
        return [s * q for s, q in self.q_values]


@dataclass(frozen=True)
class EWitness:
    c: int
    e: int
    sign: int

    def unit(self, n: int) -> tuple[int, int]:
        return (self.c * self.c + n * self.e * self.e) // 2, self.c * self.e


def _check_nonsquare(n: int):
    if n < 2:
        raise PreconditionViolated(f"n = {n} must be at least 2")
    if isqrt(n) ** 2 == n:
        raise PerfectSquare(f"{n} is a perfect square")


def cf_sqrt(n: int) -> PellData:
    """One period of the continued fraction of sqrt(n), integers only."""
    _check_nonsquare(n)
    a0 = isqrt(n)
    P, Q, a = 0, 1, a0
    quotients = [a0]
    qvals = []
    first = None
    k = 0
    while True:
        P = a * Q - P
        Q = (n - P * P) // Q
        if first is None:
            first = (P, Q)
        elif (P, Q) == first:
            break
        qvals.append((-1 if k % 2 == 0 else 1, Q))
        a = (a0 + P) // Q
        quotients.append(a)
        k += 1
    period = len(qvals)
    return PellData(
        n=n,
        period=period,
        partial_quotients=tuple(quotients),
        q_values=tuple(qvals),
        unit_norm=-1 if period % 2 else 1,
    )


def norm_fundamental_unit(n: int) -> int:
    _check_nonsquare(n)
    return -1 if kernels.cf_period(n) % 2 else 1


def _check_E_domain(n: int):
    if n <= 3 or n % 2 == 0:
        raise PreconditionViolated(f"n = {n} must be odd and > 3")
    d = 3
    while d * d <= n:
        if n % (d * d) == 0:
            raise PreconditionViolated(f"n = {n} is not squarefree")
        d += 2


def convergent(n: int, k: int) -> tuple[int, int]:
    """The k-th convergent p_k / q_k of sqrt(n) (arbitrary precision)."""
    a0 = isqrt(n)
    P, Q, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    for _ in range(k):
        P = a * Q - P
        Q = (n - P * P) // Q
        a = (a0 + P) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return p, q


def solve_pm2(n: int) -> EWitness | None:
    """Smallest solution of c^2 - n e^2 = +-2, or None.

    Since 2 < sqrt(n), every solution with c, e > 0 is a convergent of
    sqrt(n), so scanning one period is exhaustive.
    """
    _check_E_domain(n)
    k = kernels.cf_pm2_index(n)
    if k < 0:
        return None
    c, e = convergent(n, k)
    return EWitness(c=c, e=e, sign=1 if k % 2 else -1)


def in_E(n: int) -> bool:
    _check_E_domain(n)
    return kernels.cf_pm2_index(n) >= 0


def _in_E_unchecked(n: int) -> bool:
    return kernels.cf_pm2_index(n) >= 0


def hasse_Q(n: int) -> int:
    return 2 if in_E(n) else 1


def hasse_witness(w: EWitness, n: int) -> tuple[int, int]:
    """Norm-one unit a + b sqrt(n) with i(a + b sqrt(n)) a square in K_n.

    With x = (c + ci)/2 and y = (e + ei)/2, the element z = x + y sqrt(n)
    satisfies z^2 = i (a + b sqrt(n)), a = (c^2 + n e^2)/2, b = c e.
    """
    if w.c * w.c - n * w.e * w.e != 2 * w.sign or w.sign not in (1, -1):
        raise InvalidWitness(f"{w} does not solve c^2 - {n} e^2 = +-2")
    if w.c % 2 == 0 or w.e % 2 == 0:
        raise InvalidWitness(f"{w}: c and e must be odd")
    a, b = w.unit(n)
    if a * a - n * b * b != 1:
        raise InvalidWitness(f"constructed unit ({a}, {b}) has norm != 1")
    return a, b
