import warnings

import pytest

from dirichlet_biquad.arithmetic import factor_odd_squarefree, sieve_odd_squarefree
from dirichlet_biquad.biquadratic import (
    biquad_invariants,
    check_final_identity,
    count_F,
    count_F_closed_form,
    delta,
    epsilon,
    rk2_biquad,
    rk4_biquad,
    rk4_bounds,
)
from dirichlet_biquad.errors import FormulaAnomaly, HypothesisNotChecked, PreconditionViolated
from dirichlet_biquad.forms import class_number
from dirichlet_biquad.quadratic import fundamental_discriminants, in_N


@pytest.mark.parametrize("n, r", [(5, 0), (21, 1), (105, 2)])
def test_rk2_biquad(n, r):
    assert rk2_biquad(n) == r


@pytest.mark.parametrize("n, c", [(5, 4), (17, 8), (13, 4)])
def test_count_F(n, c):
    assert count_F(n) == c


def test_count_F_closed_form_agrees():
    for fn in sieve_odd_squarefree(3000):
        assert count_F(fn) == count_F_closed_form(fn), fn.n
        assert count_F(fn) == 2 ** (rk2_biquad(fn) + 2), fn.n


@pytest.mark.parametrize("n, d", [(5, 1), (21, -1), (105, 0), (17, 0)])
def test_delta(n, d):
    assert delta(n) == d


def test_epsilon():
    assert epsilon(7) == 1 and epsilon(5) == 0
    with pytest.raises(PreconditionViolated):
        epsilon(3)


@pytest.mark.parametrize("n, r", [(5, 0), (105, 1), (21, 0)])
def test_rk4_biquad(n, r):
    assert rk4_biquad(n, in_N(n)) == r


def test_rk4_biquad_needs_hypothesis():
    assert rk4_biquad(39, False) is None


def test_rk4_biquad_flags_negative(recwarn):
    # 17 has omega3 = 0 and delta = 0; forcing epsilon = 0 gives -1
    with pytest.warns(FormulaAnomaly):
        assert rk4_biquad(17, True, eps=0) == -1


@pytest.mark.parametrize("n, b", [(105, (0, 3)), (5, (0, 1)), (4389, (2, 5))])
def test_rk4_bounds(n, b):
    assert rk4_bounds(n) == b


@pytest.mark.parametrize("n, side", [(105, 3), (21, 1), (5, 0)])
def test_check_final_identity(n, side):
    plus, minus = fundamental_discriminants(n)
    rep = check_final_identity(n, class_number(plus), class_number(minus), True)
    assert rep.passed and rep.lhs == rep.rhs == side


def test_check_final_identity_requires_hypothesis():
    with pytest.raises(HypothesisNotChecked):
        check_final_identity(105, 2, 8, False)


def test_no_anomalies_on_N():
    with warnings.catch_warnings():
        warnings.simplefilter("error", FormulaAnomaly)
        for fn in sieve_odd_squarefree(50000, start=5):
            if in_N(fn):
                r = rk4_biquad(fn, True)
                lo, hi = rk4_bounds(fn)
                assert lo <= r <= hi, fn.n


def test_biquad_invariants_bundle():
    b = biquad_invariants(factor_odd_squarefree(105), True)
    assert (b.rk2_K, b.F_count, b.delta, b.epsilon, b.Q, b.rk4_K, b.bounds) == (2, 16, 0, 0, 1, 1, (0, 3))
    assert biquad_invariants(105, True, enumerate_F=False).F_count == 16
