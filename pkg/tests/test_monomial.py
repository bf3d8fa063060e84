from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import DepthBudgetExceeded
from models import Flatness
from monomial import (
    ONE,
    X,
    TransMonomial,
    cmp_m,
    div_m,
    ell,
    exp_of,
    flat_cmp_m,
    inv_m,
    log_m,
    make,
    max_monomial,
    mul_m,
    pow_m,
)
from series import Series

E_X = exp_of(Series.x())
LOG = ell(1)


def test_multiplication_adds_exponents():
    m = mul_m(pow_m(X, 2), ell(1, Fraction(-1)))
    assert m.log_powers == (Fraction(2), Fraction(-1))
    assert mul_m(m, inv_m(m)) == ONE


def test_exponential_parts_add():
    m = mul_m(E_X, E_X)
    assert m.exp_part is not None
    assert m.exp_part.terms == ((Fraction(2), X),)
    assert div_m(E_X, E_X).is_one


def test_trailing_zero_powers_are_trimmed():
    assert TransMonomial((Fraction(1), Fraction(0), Fraction(0))) == X
    assert TransMonomial((Fraction(0),)) == ONE


def test_single_logs_in_exponent_are_absorbed():
    # e^{2 log x} is x^2
    m = make((), Series.monomial(LOG, 2))
    assert m == pow_m(X, 2)
    assert m.exp_part is None
    # e^{x + log log x} = log(x) · e^x
    mixed = make((), Series.from_terms([(Fraction(1), X), (Fraction(1), ell(2))]))
    assert mixed.log_powers == (Fraction(0), Fraction(1))
    assert mixed.exp_part.terms == ((Fraction(1), X),)


@pytest.mark.parametrize(
    "small, large",
    [
        (ONE, X),
        (LOG, X),
        (pow_m(X, 100), E_X),
        (inv_m(X), ONE),
        (mul_m(X, ell(1, Fraction(-5))), mul_m(X, ell(2, Fraction(-1)))),
        (inv_m(E_X), pow_m(X, -1000)),
        (E_X, exp_of(Series.monomial(X, 2))),
    ],
)
def test_monomial_order(small, large):
    assert cmp_m(small, large) == -1
    assert cmp_m(large, small) == 1
    assert max_monomial(small, None, large) == large


def test_log_of_monomial():
    log_x2 = log_m(mul_m(pow_m(X, 2), ell(1, Fraction(-1))))
    assert log_x2.terms == ((Fraction(2), ell(1)), (Fraction(-1), ell(2)))
    assert log_m(E_X).terms == ((Fraction(1), X),)
    assert log_m(ONE).is_zero


def test_log_beyond_depth_budget(kernel):
    deep = ell(kernel.max_log_depth)
    with pytest.raises(DepthBudgetExceeded):
        log_m(deep)


def test_flatness_classes():
    assert flat_cmp_m(X, pow_m(X, 3)) is Flatness.SAME_CLASS
    assert flat_cmp_m(LOG, X) is Flatness.STRICTLY_FLATTER
    assert flat_cmp_m(E_X, X) is Flatness.STRICTLY_STEEPER
    assert flat_cmp_m(ONE, LOG) is Flatness.STRICTLY_FLATTER
    assert flat_cmp_m(ONE, ONE) is Flatness.SAME_CLASS


exponents = st.fractions(min_value=-4, max_value=4, max_denominator=6)
monomials = st.builds(
    lambda a, b, c: TransMonomial((a, b, c)), exponents, exponents, exponents
)


@given(monomials, monomials, monomials)
def test_group_laws(a, b, c):
    assert mul_m(mul_m(a, b), c) == mul_m(a, mul_m(b, c))
    assert mul_m(a, b) == mul_m(b, a)
    assert mul_m(a, inv_m(a)) == ONE


@given(monomials, monomials, monomials)
def test_order_is_compatible_with_multiplication(a, b, c):
    assert cmp_m(a, b) == cmp_m(mul_m(a, c), mul_m(b, c))
    assert cmp_m(a, b) == -cmp_m(b, a)
