from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import (
    NonConvergent,
    NotContracting,
    PrecisionExhausted,
    PreconditionError,
    ZeroDivision,
)
from models import Dominance, Ordering
from monomial import ONE, X, ell, pow_m
from series import (
    Series,
    agree,
    apply_linear,
    compare,
    constant_term,
    dominance,
    infinitesimal_part,
    neumann_invert,
    purely_large_part,
    reciprocal,
    truncate_below,
)
from tests.helpers import S


def xp(k) -> Series:
    return Series.monomial(pow_m(X, k))


def test_terms_are_sorted_and_merged():
    s = Series.from_terms([(1, pow_m(X, -1)), (2, X), (3, pow_m(X, -1)), (-2, X)])
    assert s.terms == ((Fraction(4), pow_m(X, -1)),)
    assert s.is_exact


def test_addition_cancels_to_exact_zero():
    assert (S("x + 1") - S("x + 1")).is_zero


def test_product_example():
    s = S("(x + 1) * (x - 1)")
    assert s.terms == ((Fraction(1), pow_m(X, 2)), (Fraction(-1), ONE))


def test_geometric_reciprocal_is_truncated(kernel):
    s = reciprocal(Series.one() - xp(-1))
    assert len(s.terms) == kernel.max_terms
    assert all(c == 1 for c, _ in s.terms)
    assert s.terms[-1][1] == pow_m(X, -(kernel.max_terms - 1))
    assert s.cutoff == pow_m(X, -kernel.max_terms)


def test_reciprocal_of_zero():
    with pytest.raises(ZeroDivision):
        reciprocal(Series.zero())


def test_cutoff_propagates_through_product():
    s = Series.from_terms([(1, X)], pow_m(X, -2))
    product = s * s
    assert product.terms == ((Fraction(1), pow_m(X, 2)),)
    assert product.cutoff == pow_m(X, -1)


def test_compare_and_dominance():
    assert compare(S("x"), S("log(x)^3")) is Ordering.GREATER
    assert compare(S("-x"), S("1")) is Ordering.LESS
    assert compare(S("x + 1"), S("x + 1")) is Ordering.EQUAL
    assert dominance(S("2*x"), S("x + 7")) is Dominance.ASYMPTOTIC
    assert dominance(S("x^-1"), S("1")) is Dominance.PRECEDES
    assert S("x^-1").is_infinitesimal()
    assert S("log(x)").is_infinite()


def test_sign_hidden_by_cutoff():
    with pytest.raises(PrecisionExhausted):
        compare(Series.big_o(X), Series.zero())
    with pytest.raises(PrecisionExhausted):
        Series.big_o(ONE).dominant_term()
    with pytest.raises(PreconditionError):
        Series.zero().dominant_term()


def test_decomposition():
    s = S("x^2 + 3 + x^-1")
    assert purely_large_part(s).terms == ((Fraction(1), pow_m(X, 2)),)
    assert constant_term(s) == 3
    assert infinitesimal_part(s).terms == ((Fraction(1), pow_m(X, -1)),)
    with pytest.raises(PrecisionExhausted):
        constant_term(Series.from_terms([(1, X)], ONE))


def test_truncate_below():
    s = truncate_below(S("x + 1 + x^-1"), ONE)
    assert s.terms == ((Fraction(1), X),)
    assert s.cutoff == ONE


def test_apply_linear_is_termwise():
    doubled = apply_linear(lambda m: Series.monomial(m, 2), S("x + log(x)"))
    assert agree(doubled, S("2*x + 2*log(x)"))
    with pytest.raises(PreconditionError):
        apply_linear(lambda m: Series.monomial(m), Series.big_o(X))


def test_neumann_solves_contracting_equation():
    # u + u/x = 1  =>  u = 1/(1 + 1/x)
    u = neumann_invert(lambda m: Series.monomial(pow_m(X, -1) * m), Series.one())
    assert agree(u, reciprocal(S("1 + x^-1")))


def test_neumann_rejects_non_contracting_operator():
    with pytest.raises(NotContracting):
        neumann_invert(lambda m: Series.monomial(m), Series.one())


def test_neumann_cap_raises(kernel):
    with kernel.replace(max_fixpoint_iters=3).activate():
        with pytest.raises(NonConvergent):
            neumann_invert(lambda m: Series.monomial(ell(1, -1) * m), Series.one())


def test_neumann_cap_can_truncate(kernel):
    with kernel.replace(max_fixpoint_iters=3).activate():
        u = neumann_invert(
            lambda m: Series.monomial(ell(1, -1) * m), Series.one(), truncate=True
        )
    assert u.cutoff == ell(1, -4)
    assert len(u.terms) == 4


small = st.integers(min_value=-3, max_value=3)
series = st.lists(st.tuples(small, st.integers(min_value=-3, max_value=2)), max_size=4).map(
    lambda items: Series.from_terms([(c, pow_m(X, k)) for c, k in items])
)


@given(series, series, series)
def test_ring_laws(a, b, c):
    assert agree(a * (b + c), a * b + a * c)
    assert agree((a * b) * c, a * (b * c))
    assert agree(a + b, b + a)


@given(series)
def test_reciprocal_is_a_right_inverse(a):
    if a.is_zero:
        return
    assert agree(a * reciprocal(a), Series.one())
