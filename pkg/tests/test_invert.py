from fractions import Fraction

import pytest

from compose import compose
from errors import NotPositiveInfinite, NotTaylorConfigured, PreconditionError
from monomial import X, exp_of, pow_m
from series import Series, agree
from invert import comp_inverse, invert_block, oracle_inverse, steep_decompose
from tests.helpers import S


def test_decomposition_groups_by_steepness():
    eps = S("log(x) + x^-1 + exp(-x) + x*exp(-x) + exp(-x^2)")
    blocks = steep_decompose(eps).blocks
    assert [b.witness for b in blocks] == [
        X,
        exp_of(Series.x()),
        exp_of(Series.monomial(pow_m(X, 2))),
    ]
    assert agree(blocks[0].series, S("log(x) + x^-1"))
    assert agree(blocks[1].series, S("x*exp(-x) + exp(-x)"))
    assert agree(blocks[2].series, S("exp(-x^2)"))


def test_decomposition_of_zero_and_large_input():
    assert steep_decompose(Series.zero()).blocks == ()
    with pytest.raises(PreconditionError):
        steep_decompose(S("x^2"))


def test_block_inverse_of_translation():
    assert agree(invert_block(S("x + 1")), S("x - 1"))


def test_block_inverse_needs_taylor_configuration():
    with pytest.raises(NotTaylorConfigured):
        invert_block(S("x + x^(1/2) + exp(-x^2)"))


def test_inverse_of_x_plus_reciprocal():
    g = comp_inverse(S("x + x^-1"))
    assert g.terms[:4] == (
        (Fraction(1), X),
        (Fraction(-1), pow_m(X, -1)),
        (Fraction(-1), pow_m(X, -3)),
        (Fraction(-2), pow_m(X, -5)),
    )
    assert agree(g, oracle_inverse(S("x + x^-1")))


@pytest.mark.parametrize(
    "f, expected",
    [
        ("2*x", "1/2*x"),
        ("x^2", "x^(1/2)"),
        ("exp(x)", "log(x)"),
        ("log(x)", "exp(x)"),
        ("x + 1", "x - 1"),
    ],
)
def test_inverse_examples(f, expected):
    assert agree(comp_inverse(S(f)), S(expected))


@pytest.mark.parametrize(
    "f",
    ["x + log(x)", "x + 1 + x^-2", "x + exp(-x)", "x^2 + x", "x*log(x)", "exp(x) + x"],
)
def test_inverse_is_two_sided(f):
    f = S(f)
    g = comp_inverse(f)
    assert agree(compose(f, g), Series.x())
    assert agree(compose(g, f), Series.x())


def test_oracle_agrees_with_block_inverse():
    f = S("x + 1 + x^-2")
    assert agree(comp_inverse(f), oracle_inverse(f))


def test_inverse_reverses_composition():
    f, g = S("x + x^-1"), S("x^2")
    left = comp_inverse(compose(f, g))
    right = compose(comp_inverse(g), comp_inverse(f))
    assert agree(left, right)


@pytest.mark.parametrize("f", ["-x", "3", "x^-1"])
def test_inverse_needs_positive_infinite(f):
    with pytest.raises(NotPositiveInfinite):
        comp_inverse(S(f))


EXACT_CORPUS = [
    "x + 1",
    "x - 1",
    "x + x^-1",
    "x - x^-1",
    "x + x^-1 + x^-2",
    "x + x^(1/2)",
    "x - x^(1/2)",
    "x + x^(1/2) + log(x)",
    "x + log(x)",
    "x - log(x)",
    "x + log(log(x))",
    "x + exp(-x)",
    "x - exp(-x)",
    "x + x*exp(-x)",
    "x + exp(-x^2)",
    "x + x^-1 + exp(-x)",
    "x + log(x) + exp(-x)",
    "x + exp(-x) + exp(-x^2)",
]

FLOAT_CORPUS = [
    "x + 1 + exp(-x)",
    "x + 2 + exp(-x)",
    "x + x^(1/2) + exp(-x)",
    "x + x^(1/2) + exp(-x^2)",
]


def check_inverse(f: Series) -> None:
    g = comp_inverse(f)
    assert not (compose(f, g) - Series.x()).terms
    assert not (compose(g, f) - Series.x()).terms
    assert agree(g, oracle_inverse(f))


@pytest.mark.parametrize("f", EXACT_CORPUS)
def test_inversion_corpus(f):
    check_inverse(S(f))


@pytest.mark.parametrize("f", FLOAT_CORPUS)
def test_inversion_corpus_with_irrational_constants(f, floating):
    check_inverse(S(f))


def test_inversion_corpus_at_full_precision(kernel):
    with kernel.replace(max_terms=30).activate():
        for f in EXACT_CORPUS:
            check_inverse(S(f))
