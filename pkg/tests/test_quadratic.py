import pytest

from dirichlet_biquad.arithmetic import factor_odd_squarefree, sieve_odd_squarefree
from dirichlet_biquad.errors import NotFundamental, PreconditionViolated
from dirichlet_biquad.forms import (
    FormClassOracle,
    is_fundamental,
    narrow_class_group,
    rk2k,
)
from dirichlet_biquad.quadratic import (
    fundamental_discriminants,
    hypothesis_ordinary,
    in_N,
    index_i,
    prime_discriminants,
    quad_invariants,
    redei_matrix,
    rk2_drop_predicate,
    rk2_narrow,
    rk2_ordinary,
    rk2_sum,
    rk4_narrow,
)


@pytest.mark.parametrize("n, disc", [(105, (105, -420)), (7, (28, -7)), (5, (5, -20)), (3, (12, -3))])
def test_fundamental_discriminants(n, disc):
    assert fundamental_discriminants(n) == disc


def test_rk2_narrow_examples():
    assert rk2_narrow(105) == 2
    assert rk2_narrow(-20) == 1
    assert rk2_narrow(28) == 1
    with pytest.raises(NotFundamental):
        rk2_narrow(45)


@pytest.mark.parametrize("sign, n, r", [(1, 105, 1), (-1, 105, 3), (1, 7, 0), (-1, 7, 0)])
def test_rk2_ordinary_examples(sign, n, r):
    assert rk2_ordinary(sign, n) == r


@pytest.mark.parametrize("n, r", [(5, 1), (105, 4), (35, 2)])
def test_rk2_sum_examples(n, r):
    assert rk2_sum(n) == r


def test_rk2_sum_is_a_sum():
    for fn in sieve_odd_squarefree(5000):
        assert rk2_sum(fn) == rk2_ordinary(1, fn) + rk2_ordinary(-1, fn)


@pytest.mark.parametrize(
    "D, parts",
    [(-20, [(-4, 2), (5, 5)]), (-84, [(-4, 2), (-3, 3), (-7, 7)]), (40, [(8, 2), (5, 5)]),
     (-24, [(8, 2), (-3, 3)]), (-8, [(-8, 2)]), (-56, [(8, 2), (-7, 7)]), (-40, [(-8, 2), (5, 5)]), (105, [(-3, 3), (5, 5), (-7, 7)])],
)
def test_prime_discriminants(D, parts):
    pd = prime_discriminants(D)
    assert pd == parts
    prod = 1
    for d, _ in pd:
        prod *= d
    assert prod == D


def test_redei_matrix_examples():
    m = redei_matrix(-20)
    assert m.t == 2
    m = redei_matrix(5)
    assert m.t == 1 and m.entries == ((0,),)
    m = redei_matrix(-84)
    assert m.t == 3 and m.labels == (-4, -3, -7)


def test_redei_columns_sum_to_zero():
    for D in list(range(-3, -3000, -1)) + list(range(5, 3000)):
        if is_fundamental(D):
            m = redei_matrix(D)
            for j in range(m.t):
                assert sum(row[j] for row in m.entries) % 2 == 0


@pytest.mark.parametrize("D, r", [(-20, 0), (-39, 1), (105, 0), (-56, 1), (145, 1)])
def test_rk4_narrow_examples(D, r):
    assert rk4_narrow(D) == r


def test_genus_and_redei_against_oracle():
    # every fundamental discriminant of both signs, 2-adic types included
    oracle = FormClassOracle(20000)
    checked = 0
    for k in range(3, 20001):
        for D in (k, -k):
            if not is_fundamental(D):
                continue
            g = oracle.narrow_class_group(D)
            assert rk2_narrow(D) == rk2k(g, 1), D
            assert rk4_narrow(D) == rk2k(g, 2), D
            checked += 1
    assert checked > 12000


def test_ordinary_rk2_against_oracle():
    oracle = FormClassOracle(40000)
    for fn in sieve_odd_squarefree(9999):
        plus, minus = fundamental_discriminants(fn)
        assert rk2_ordinary(1, fn) == rk2k(oracle.ordinary_class_group(plus), 1), fn.n
        assert rk2_ordinary(-1, fn) == rk2k(oracle.narrow_class_group(minus), 1), fn.n


@pytest.mark.parametrize("n, i", [(5, 1), (21, 2), (65, 1), (3, 2), (7, 2), (13, 1)])
def test_index_i(n, i):
    assert index_i(n) == i


def test_index_i_matches_oracle():
    oracle = FormClassOracle(40000)
    for fn in sieve_odd_squarefree(9999):
        D = fundamental_discriminants(fn)[0]
        assert index_i(fn) == oracle.narrow_class_number(D) // oracle.class_number(D)


def test_rk2_drop_predicate():
    assert rk2_drop_predicate(21)
    assert rk2_drop_predicate(7)
    with pytest.raises(PreconditionViolated):
        rk2_drop_predicate(5)
    with pytest.raises(PreconditionViolated):
        rk2_drop_predicate(65)


def test_rk2_drop_predicate_matches_oracle():
    oracle = FormClassOracle(40000)
    for fn in sieve_odd_squarefree(9999):
        D = fundamental_discriminants(fn)[0]
        if index_i(fn) == 2:
            drop = rk2k(oracle.narrow_class_group(D), 1) > rk2k(oracle.ordinary_class_group(D), 1)
            assert rk2_drop_predicate(fn) == drop, fn.n


@pytest.mark.parametrize("n, member", [(5, True), (39, False), (105, True), (7, True)])
def test_in_N(n, member):
    assert in_N(n) == member


@pytest.mark.parametrize("n, holds", [(21, True), (39, False), (105, True)])
def test_hypothesis_ordinary(n, holds):
    assert hypothesis_ordinary(n) == holds


def test_in_N_implies_ordinary_hypothesis():
    oracle = FormClassOracle(40000)
    for fn in sieve_odd_squarefree(9999):
        if in_N(fn):
            assert hypothesis_ordinary(fn, oracle), fn.n


def test_quad_invariants_bundle():
    q = quad_invariants(factor_odd_squarefree(105))
    assert (q.disc_plus, q.disc_minus) == (105, -420)
    assert (q.rk2_narrow_plus, q.rk2_ordinary_plus, q.rk2_minus) == (2, 1, 3)
    assert (q.rk4_narrow_plus, q.rk4_minus, q.index_i) == (0, 0, 2)
    assert narrow_class_group(-420).invariant_factors == (2, 2, 2)
