from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import scalar
from errors import DepthBudgetExceeded, ExactnessUnavailable, NonPositiveArgument
from models import Flatness
from monomial import ONE, X, cmp_m, ell, exp_of, pow_m
from series import Series, agree
from translog import exp_s, flat_cmp, log_iterated, log_s, pow_s
from tests.helpers import S, close


def test_log_of_monomials():
    assert agree(log_s(S("x^2")), S("2*log(x)"))
    assert agree(log_s(S("exp(x)")), S("x"))


def test_log_of_one_plus_small():
    s = log_s(S("x + 1"))
    assert s.terms[0] == (Fraction(1), ell(1))
    assert s.terms[1] == (Fraction(1), pow_m(X, -1))
    assert s.terms[2] == (Fraction(-1, 2), pow_m(X, -2))
    assert s.terms[3] == (Fraction(1, 3), pow_m(X, -3))


def test_log_needs_float_for_irrational_constants(floating):
    with floating.replace(scalar_mode="rational").activate():
        with pytest.raises(ExactnessUnavailable):
            log_s(S("2*x"))
    s = log_s(S("2*x"))
    assert s.terms[0] == (1, ell(1))
    assert close(s.terms[1][0], mpmath.log(2))


def test_log_of_non_positive():
    with pytest.raises(NonPositiveArgument):
        log_s(S("-x"))
    with pytest.raises(NonPositiveArgument):
        log_s(Series.zero())


def test_exp_of_large_and_small_parts():
    s = exp_s(S("x + x^-1"))
    e = exp_of(Series.x())
    assert s.terms[0] == (Fraction(1), e)
    assert s.terms[1] == (Fraction(1), pow_m(X, -1) * e)
    assert s.terms[2] == (Fraction(1, 2), pow_m(X, -2) * e)


def test_exp_log_round_trip():
    s = S("x + 1 + x^-1")
    assert agree(exp_s(log_s(s)), s)
    assert agree(log_s(exp_s(S("x^2 + x^-1"))), S("x^2 + x^-1"))


def test_exp_height_budget(kernel):
    with kernel.replace(max_exp_height=1).activate():
        exp_s(S("x"))
        with pytest.raises(DepthBudgetExceeded):
            exp_s(exp_s(S("x")))


def test_log_depth_budget(kernel):
    with kernel.replace(max_log_depth=2).activate():
        log_iterated(S("x"), 2)
        with pytest.raises(DepthBudgetExceeded):
            log_iterated(S("x"), 3)


def test_rational_powers():
    assert agree(pow_s(S("x^2"), Fraction(1, 2)), S("x"))
    s = pow_s(S("x^2 + 1"), Fraction(1, 2))
    assert s.terms[0] == (Fraction(1), X)
    assert s.terms[1] == (Fraction(1, 2), pow_m(X, -1))
    assert s.terms[2] == (Fraction(-1, 8), pow_m(X, -3))
    assert agree(pow_s(s, 2), S("x^2 + 1"))


def test_powers_of_negative_series():
    assert agree(pow_s(S("-x"), 3), S("-x^3"))
    with pytest.raises(NonPositiveArgument):
        pow_s(S("-x"), Fraction(1, 2))


def test_flatness():
    assert flat_cmp(S("x^2 + x"), S("3*x")) is Flatness.SAME_CLASS
    assert flat_cmp(S("log(x)"), S("x")) is Flatness.STRICTLY_FLATTER
    assert flat_cmp(S("exp(x)"), S("x^100")) is Flatness.STRICTLY_STEEPER


exponents = st.sampled_from([Fraction(k, 2) for k in range(-4, 5)])
large_monomials = st.builds(
    lambda a, b: pow_m(X, a) * ell(1, b), exponents, exponents
).filter(lambda m: cmp_m(m, ONE) > 0)
small_monomials = st.builds(
    lambda a, b: pow_m(X, -a) * ell(1, b), exponents.filter(lambda a: a > 0), exponents
)


@settings(max_examples=100)
@given(
    st.lists(st.tuples(st.integers(-3, 3), large_monomials), max_size=2),
    st.lists(st.tuples(st.integers(-3, 3), small_monomials), max_size=2),
)
def test_log_undoes_exp(large, small):
    s = Series.from_terms(large + small)
    assert agree(log_s(exp_s(s)), s)


@settings(max_examples=100)
@given(
    st.integers(min_value=1, max_value=9),
    large_monomials,
    st.lists(st.tuples(st.integers(-3, 3), small_monomials), max_size=2),
)
def test_log_is_flatter_than_its_argument(floating, c, lead, rest):
    small = Series.from_terms([(scalar.coerce(k), m) for k, m in rest])
    s = Series.monomial(lead, c) * (Series.one() + small)
    assert flat_cmp(log_s(s), s) is Flatness.STRICTLY_FLATTER
