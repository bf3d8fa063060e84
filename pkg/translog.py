"""Logarithm, exponential and real powers of series."""

from __future__ import annotations

import logging
from fractions import Fraction

import scalar
from errors import DepthBudgetExceeded, NonPositiveArgument
from models import Dominance, Flatness, get_context
from monomial import ONE, TransMonomial, exp_of, inv_m, log_m, log_series, pow_m
from series import (
    Series,
    add,
    constant_term,
    dominance,
    infinitesimal_part,
    power_int,
    power_series,
    purely_large_part,
    scale,
    shift,
    sub,
)

logger = logging.getLogger(__name__)


def _split_dominant(s: Series) -> tuple:
    """s = c·𝔡·(1 + ε) with ε ≺ 1; returns (c, 𝔡, ε)."""
    c, m = s.dominant_term()
    eps = sub(shift(scale(s, scalar.inv(c)), inv_m(m)), Series.one())
    return c, m, eps


def log_s(s: Series) -> Series:
    if s.is_zero:
        raise NonPositiveArgument("log of zero")
    c, m, eps = _split_dominant(s)
    if scalar.sign(c) <= 0:
        raise NonPositiveArgument(f"log of a negative series (leading coefficient {scalar.render(c)})")
    result = add(log_m(m), Series.constant(scalar.log_c(c)))
    tail = power_series(
        lambda k: Fraction(0) if k == 0 else Fraction((-1) ** (k + 1), k), eps
    )
    return add(result, tail)


def _check_height(m: TransMonomial) -> None:
    if m.height > get_context().max_exp_height:
        raise DepthBudgetExceeded(
            f"exp would create height {m.height}, beyond max_exp_height"
        )


def exp_monomial(large: Series) -> TransMonomial:
    """e^L for an exact purely large L, checked against the height budget."""
    m = exp_of(large)
    _check_height(m)
    return m


def exp_s(s: Series) -> Series:
    large = purely_large_part(s)
    c = constant_term(s)
    eps = infinitesimal_part(s)
    m = exp_monomial(large) if large.terms else ONE
    factorials = [scalar.one()]

    def coefficient(k: int):
        while len(factorials) <= k:
            factorials.append(scalar.mul(factorials[-1], scalar.coerce(len(factorials))))
        return scalar.inv(factorials[k])

    body = power_series(coefficient, eps)
    if not scalar.is_zero(c):
        body = scale(body, scalar.exp_c(c))
    return shift(body, m)


def pow_s(s: Series, r) -> Series:
    """s^r for s > 0; integer powers of any nonzero s are allowed too."""
    r = scalar.exact_if_simple(r) if not isinstance(r, int) else Fraction(r)
    if scalar.is_zero(r):
        return Series.one()
    if scalar.is_one(r):
        return s
    if scalar.is_integer(r):
        return power_int(s, int(r))
    if s.is_zero:
        raise NonPositiveArgument("power of zero")
    c, m, eps = _split_dominant(s)
    if scalar.sign(c) < 0 and not scalar.is_integer(r):
        raise NonPositiveArgument("non-integer power of a negative series")
    lead = scalar.power(c, r)
    binomials = [scalar.one()]

    def coefficient(k: int):
        while len(binomials) <= k:
            j = len(binomials)
            step = scalar.div(scalar.sub(r, scalar.coerce(j - 1)), scalar.coerce(j))
            binomials.append(scalar.mul(binomials[-1], step))
        return binomials[k]

    body = power_series(coefficient, eps)
    return scale(shift(body, pow_m(m, r)), lead)


def log_iterated(s: Series, k: int) -> Series:
    for _ in range(k):
        s = log_s(s)
    return s


def _log_magnitude(s: Series) -> Series:
    """A series asymptotic to log|s|, exact enough for dominance comparisons."""
    c, m = s.dominant_term()
    if not m.is_one:
        return log_series(m)
    if not scalar.is_one(abs(c)):
        return Series.one()
    return sub(scale(s, scalar.inv(c)), Series.one())


def flat_cmp(s: Series, t: Series) -> Flatness:
    """Compare log|s| with log|t| under dominance."""
    d = dominance(_log_magnitude(s), _log_magnitude(t))
    if d is Dominance.PRECEDES:
        return Flatness.STRICTLY_FLATTER
    if d is Dominance.SUCCEEDS:
        return Flatness.STRICTLY_STEEPER
    return Flatness.SAME_CLASS
