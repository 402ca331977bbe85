"""Class group invariants of K_n = Q(sqrt(n), sqrt(-n)) = Q(sqrt(n), i)."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from .arithmetic import FactoredOddSquarefree, factor_odd_squarefree, gaussian_divisors
from .errors import FormulaAnomaly, HypothesisNotChecked, PreconditionViolated
from .pell import _in_E_unchecked


def _fn(n) -> FactoredOddSquarefree:
    return n if isinstance(n, FactoredOddSquarefree) else factor_odd_squarefree(n)


def rk2_biquad(n) -> int:
    fn = _fn(n)
    base = 2 * fn.omega1 + fn.omega3
    return base - 2 if fn.has_p5mod8 else base - 1


def count_F(n) -> int:
    """Number of Gaussian divisors beta of n with beta = +-1 mod 4, by enumeration."""
    return sum(1 for beta in gaussian_divisors(_fn(n)) if beta.is_pm1_mod4())


def count_F_closed_form(n) -> int:
    fn = _fn(n)
    e = 2 * fn.omega1 + fn.omega3
    return 1 << (e if fn.has_p5mod8 else e + 1)


def delta(n) -> int:
    fn = _fn(n)
    if fn.omega3 == 0:
        return 1 if fn.has_p5mod8 else 0
    return 0 if fn.has_p5mod8 else -1


def epsilon(n) -> int:
    fn = _fn(n)
    if fn.n <= 3:
        raise PreconditionViolated("epsilon(n) needs n > 3")
    return 1 if _in_E_unchecked(fn.n) else 0


def rk4_biquad(n, hypothesis_holds: bool, eps: int | None = None) -> int | None:
    """4-rank of Cl(K_n) from omega3 + delta + epsilon - 1, if the hypothesis holds.

    A negative value is returned as is and flagged with a FormulaAnomaly
    warning.
    """
    if not hypothesis_holds:
        return None
    fn = _fn(n)
    if eps is None:
        eps = epsilon(fn)
    value = fn.omega3 + delta(fn) + eps - 1
    if value < 0:
        warnings.warn(FormulaAnomaly(f"rk4 formula gives {value} for n = {fn.n}"), stacklevel=2)
    return value


def rk4_bounds(n) -> tuple[int, int]:
    w3 = _fn(n).omega3
    return max(w3 - 2, 0), w3 + 1


def v2(m: int) -> int:
    return (m & -m).bit_length() - 1


@dataclass(frozen=True)
class CheckReport:
    n: int
    lhs: int  # v2(h(n)) + v2(h(-n)) + log2 Q(n) - 1
    rhs: int  # rk2(Cl(K_n)) + rk4(Cl(K_n))
    passed: bool


def check_final_identity(n, h_plus: int, h_minus: int, in_N_established: bool) -> CheckReport:
    """Compare the 2-adic valuation of the Dirichlet class number relation
    with rk2 + rk4 of Cl(K_n), valid when n lies in N (so rk8(Cl(K_n)) = 0)."""
    if not in_N_established:
        raise HypothesisNotChecked("check_final_identity needs n in N")
    fn = _fn(n)
    eps = epsilon(fn)
    lhs = v2(h_plus) + v2(h_minus) + eps - 1
    rhs = rk2_biquad(fn) + rk4_biquad(fn, True, eps)
    return CheckReport(n=fn.n, lhs=lhs, rhs=rhs, passed=lhs == rhs)


@dataclass(frozen=True)
class BiquadInvariants:
    n: int
    rk2_K: int
    F_count: int
    delta: int
    epsilon: int
    Q: int
    rk4_K: int | None
    bounds: tuple[int, int]


def biquad_invariants(n, hypothesis_holds: bool, enumerate_F: bool = True) -> BiquadInvariants:
    fn = _fn(n)
    eps = epsilon(fn)
    return BiquadInvariants(
        n=fn.n,
        rk2_K=rk2_biquad(fn),
        F_count=count_F(fn) if enumerate_F else count_F_closed_form(fn),
        delta=delta(fn),
        epsilon=eps,
        Q=1 + eps,
        rk4_K=rk4_biquad(fn, hypothesis_holds, eps),
        bounds=rk4_bounds(fn),
    )

