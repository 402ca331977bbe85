"""2-ranks and 4-ranks of the class groups of Q(sqrt(n)) and Q(sqrt(-n)).

2-ranks come from genus theory (closed formulas in the prime factorization),
narrow 4-ranks from the GF(2) rank of the Redei matrix. Neither touches the
form class group oracle, which is only consulted by
:func:`hypothesis_ordinary`.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .arithmetic import FactoredOddSquarefree, factor_odd_squarefree, factorize
from .errors import NotFundamental, PreconditionViolated
from .forms import FormClassOracle, is_fundamental, rk2k
from .pell import norm_fundamental_unit


def _fn(n) -> FactoredOddSquarefree:
    return n if isinstance(n, FactoredOddSquarefree) else factor_odd_squarefree(n)


def fundamental_discriminants(n) -> tuple[int, int]:
    """Discriminants of Q(sqrt(n)) and Q(sqrt(-n)) for odd squarefree n > 1."""
    n = _fn(n).n
    plus = n if n % 4 == 1 else 4 * n
    minus = -n if n % 4 == 3 else -4 * n
    return plus, minus


def _require_fundamental(D: int):
    if not is_fundamental(D):
        raise NotFundamental(f"{D} is not a fundamental discriminant")


def rk2_narrow(D: int) -> int:
    _require_fundamental(D)
    return len(factorize(abs(D))) - 1


def rk2_ordinary(sign: int, n) -> int:
    fn = _fn(n)
    w = fn.omega
    if sign < 0:
        return w - 1 if fn.n % 4 == 3 else w
    if fn.n % 4 == 3:
        return w - 1
    return w - 2 if fn.omega3 >= 1 else w - 1


def rk2_sum(n) -> int:
    fn = _fn(n)
    return 2 * fn.omega - 1 if fn.omega3 == 0 else 2 * fn.omega - 2


def prime_discriminants(D: int) -> list[tuple[int, int]]:
    """Factor D into prime discriminants, as ``[(D_i, p_i), ...]`` by prime.

    The 2-part is one of -4, 8, -8 (or absent) and each odd prime p
    contributes p* = (-1)^((p-1)/2) p.
    """
    _require_fundamental(D)
    out = []
    odd = D
    if D % 4 == 0:
        m = D // 4
        if m % 4 == 3:
            two = -4
        else:
            two = 8 if (m // 2) % 4 == 1 else -8
        out.append((two, 2))
        odd = D // two
    for p, _ in factorize(abs(odd)):
        out.append((p if p % 4 == 1 else -p, p))
    return out


@dataclass(frozen=True)
class RedeiMatrix:
    t: int
    entries: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...]


def redei_matrix(D: int) -> RedeiMatrix:
    pd = prime_discriminants(D)
    discs = [d for d, _ in pd]
    rows = kernels.redei_rows(discs, [p for _, p in pd])
    t = len(pd)
    entries = tuple(tuple((r >> j) & 1 for j in range(t)) for r in rows)
    return RedeiMatrix(t=t, entries=entries, labels=tuple(discs))


def rk4_narrow(D: int) -> int:
    """4-rank of Cl+(D): t - 1 - rank of the Redei matrix."""
    pd = prime_discriminants(D)
    return kernels.redei_corank([d for d, _ in pd], [p for _, p in pd])


def _redei_pair(fn: FactoredOddSquarefree) -> tuple[int, int]:
    """Narrow 4-ranks for +n and -n without re-factoring (scan fast path)."""
    odd = [(p if p % 4 == 1 else -p) for p in fn.primes]
    ps = list(fn.primes)
    if fn.n % 4 == 1:
        plus = kernels.redei_corank(odd, ps)
        minus = kernels.redei_corank([-4] + odd, [2] + ps)
    else:
        plus = kernels.redei_corank([-4] + odd, [2] + ps)
        minus = kernels.redei_corank(odd, ps)
    return plus, minus


def index_i(n) -> int:
    """Index of Cl(n) in Cl+(n): 2 iff the fundamental unit has norm +1."""
    return 2 if norm_fundamental_unit(_fn(n).n) == 1 else 1


def rk2_drop_predicate(n) -> bool:
    """Whether rk2 drops from Cl+(n) to Cl(n); only defined when index_i(n) = 2."""
    fn = _fn(n)
    if index_i(fn) != 2:
        raise PreconditionViolated(f"index_i({fn.n}) = 1")
    return fn.omega3 >= 1


def in_N(n) -> bool:
    fn = _fn(n)
    if fn.n < 3:
        return False
    plus, minus = _redei_pair(fn)
    return plus == 0 and minus == 0


def hypothesis_ordinary(n, oracle: FormClassOracle | None = None) -> bool:
    """Both ORDINARY class groups of Q(sqrt(n)), Q(sqrt(-n)) have 4-rank 0."""
    oracle = oracle or FormClassOracle()
    plus, minus = fundamental_discriminants(n)
    return (
        rk2k(oracle.ordinary_class_group(plus), 2) == 0
        and rk2k(oracle.narrow_class_group(minus), 2) == 0
    )


@dataclass(frozen=True)
class QuadInvariants:
    n: int
    disc_plus: int
    disc_minus: int
    rk2_narrow_plus: int
    rk2_ordinary_plus: int
    rk2_minus: int
    rk4_narrow_plus: int
    rk4_minus: int
    index_i: int


def quad_invariants(n) -> QuadInvariants:
    fn = _fn(n)
    plus, minus = fundamental_discriminants(fn)
    r4p, r4m = _redei_pair(fn)
    return QuadInvariants(
        n=fn.n,
        disc_plus=plus,
        disc_minus=minus,
        rk2_narrow_plus=rk2_narrow(plus),
        rk2_ordinary_plus=rk2_ordinary(1, fn),
        rk2_minus=rk2_ordinary(-1, fn),
        rk4_narrow_plus=r4p,
        rk4_minus=r4m,
        index_i=index_i(fn),
    )
