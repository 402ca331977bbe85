from math import isqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dirichlet_biquad.arithmetic import sieve_odd_squarefree
from dirichlet_biquad.errors import InvalidWitness, PerfectSquare, PreconditionViolated
from dirichlet_biquad.experiments import brute_force_pm2
from dirichlet_biquad.pell import (
    EWitness,
    cf_sqrt,
    convergent,
    hasse_Q,
    hasse_witness,
    in_E,
    norm_fundamental_unit,
    solve_pm2,
)


def test_cf_sqrt_examples():
    d = cf_sqrt(5)
    assert (d.period, d.partial_quotients, d.unit_norm) == (1, (2, 4), -1)
    d = cf_sqrt(7)
    assert (d.period, d.partial_quotients, d.unit_norm) == (4, (2, 1, 1, 1, 4), 1)
    d = cf_sqrt(33)
    assert d.period == 4
    assert d.convergent_values() == [-8, 3, -8, 1]


def test_cf_rejects_squares():
    with pytest.raises(PerfectSquare):
        cf_sqrt(49)


@given(st.integers(2, 10**5))
def test_convergent_values_are_pell_values(n):
    if isqrt(n) ** 2 == n:
        return
    d = cf_sqrt(n)
    for k, v in enumerate(d.convergent_values()):
        p, q = convergent(n, k)
        assert p * p - n * q * q == v
    p, q = convergent(n, d.period - 1)
    assert p * p - n * q * q == d.unit_norm


@pytest.mark.parametrize("n, s", [(5, -1), (7, 1), (65, -1), (3, 1), (13, -1), (34, 1)])
def test_norm_fundamental_unit(n, s):
    assert norm_fundamental_unit(n) == s


def test_solve_pm2_examples():
    assert solve_pm2(7) == EWitness(3, 1, 1)
    assert solve_pm2(11) == EWitness(3, 1, -1)
    assert solve_pm2(5) is None


@pytest.mark.parametrize("n, member", [(7, True), (21, False), (23, True), (5, False)])
def test_in_E(n, member):
    assert in_E(n) == member


@pytest.mark.parametrize("n, q", [(7, 2), (5, 1), (105, 1)])
def test_hasse_Q(n, q):
    assert hasse_Q(n) == q


@pytest.mark.parametrize("n", [3, 1, 9, 45, 8])
def test_E_domain(n):
    with pytest.raises(PreconditionViolated):
        in_E(n)


@pytest.mark.parametrize(
    "w, n, ab",
    [(EWitness(3, 1, 1), 7, (8, 3)), (EWitness(5, 1, 1), 23, (24, 5)), (EWitness(3, 1, -1), 11, (10, 3))],
)
def test_hasse_witness(w, n, ab):
    assert hasse_witness(w, n) == ab


def test_hasse_witness_rejects_bad():
    with pytest.raises(InvalidWitness):
        hasse_witness(EWitness(3, 1, 1), 11)
    with pytest.raises(InvalidWitness):
        hasse_witness(EWitness(3, 1, 2), 7)


def test_E_members_have_norm_plus_one():
    for fn in sieve_odd_squarefree(20000, start=5):
        if in_E(fn.n):
            assert norm_fundamental_unit(fn.n) == 1, fn.n


def test_witnesses_solve_and_match_brute_force():
    ns = [fn.n for fn in sieve_odd_squarefree(3000, start=5)]
    brute = brute_force_pm2(ns)
    for n in ns:
        w = solve_pm2(n)
        if brute[n] is not None:
            # a small solution exists, so the continued fraction must find it
            assert w is not None and (w.c, w.e) == brute[n], n
        if w is not None:
            assert w.c * w.c - n * w.e * w.e == 2 * w.sign
            a, b = hasse_witness(w, n)
            assert a * a - n * b * b == 1
            if w.e <= 10**4:
                assert brute[n] is not None, n


def test_large_witness():
    # the smallest solution can be far outside any brute-force window
    w = solve_pm2(739)
    assert w.e == 11516632737 and w.sign == -1
