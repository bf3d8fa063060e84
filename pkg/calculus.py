"""Derivation, logarithmic derivative and the strongly linear integral."""

from __future__ import annotations

import functools
import logging
from fractions import Fraction

import scalar
from errors import DepthBudgetExceeded, ZeroDivision
from models import get_context
from monomial import ONE, TransMonomial, cmp_m, div_m, mul_m
from series import Series, add, apply_linear, div, neumann_invert, shift, sub

logger = logging.getLogger(__name__)


def _log_chain(k: int, power=Fraction(1)) -> TransMonomial:
    """(ℓ_0 ℓ_1 ⋯ ℓ_k)^power."""
    return TransMonomial((power,) * (k + 1))


# ---------------------------------------------------------------------------
# Derivation
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=1 << 14)
def _derive_cached(m: TransMonomial, _key) -> Series:
    terms = []
    for k, a in enumerate(m.log_powers):
        if not scalar.is_zero(a):
            terms.append((scalar.coerce(a), mul_m(m, _log_chain(k, Fraction(-1)))))
    out = Series.from_terms(terms)
    if m.exp_part is not None:
        out = add(out, shift(derive(m.exp_part), m))
    return out


def derive_m(m: TransMonomial) -> Series:
    if m.is_one:
        return Series.zero()
    return _derive_cached(m, get_context().cache_key)


def _derivative_bound(c: TransMonomial) -> TransMonomial:
    if c.is_one:
        return _log_chain(get_context().max_log_depth, Fraction(-1))
    return derive_m(c).leading_monomial()


def derive(s: Series) -> Series:
    return apply_linear(derive_m, s, bound=_derivative_bound)


def nth_derivative(s: Series, n: int) -> Series:
    for _ in range(n):
        s = derive(s)
    return s


def log_derivative(t: Series) -> Series:
    """t† = t′ / t."""
    if t.is_zero:
        raise ZeroDivision("logarithmic derivative of zero")
    return div(derive(t), t)


def log_derivative_m(m: TransMonomial) -> Series:
    """𝔪† = Σ a_k/(ℓ_0⋯ℓ_k) + P′, without a division."""
    return shift(derive_m(m), div_m(ONE, m)) if not m.is_one else Series.zero()


# ---------------------------------------------------------------------------
# Integration
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=1 << 14)
def _antiderivative_cached(m: TransMonomial, _key) -> tuple:
    j = 0
    while j < len(m.log_powers) and scalar.is_one(scalar.neg(m.log_powers[j])):
        j += 1
    a_j = m.power(j)
    chain = _log_chain(j)
    if m.exp_part is not None:
        c, n = derive(m.exp_part).dominant_term()
        if cmp_m(n, div_m(ONE, chain)) > 0:
            return scalar.inv(c), div_m(m, n)
    if j > get_context().max_log_depth:
        raise DepthBudgetExceeded(f"integral of {m} needs log_{j}")
    return scalar.inv(scalar.add(scalar.coerce(a_j), scalar.one())), mul_m(m, chain)


def antiderivative_term(m: TransMonomial) -> tuple:
    """Leading antiderivative (c, 𝔫) of 𝔪: (c·𝔫)′ ∼ 𝔪."""
    return _antiderivative_cached(m, get_context().cache_key)


def _guess(m: TransMonomial) -> Series:
    c, n = antiderivative_term(m)
    return Series.monomial(n, c)


def _correction(m: TransMonomial) -> Series:
    return sub(derive(_guess(m)), Series.monomial(m))


def integrate(s: Series) -> Series:
    """Antiderivative without constant term."""
    if s.is_zero:
        return s
    u = neumann_invert(_correction, s)
    return apply_linear(_guess, u, bound=lambda c: antiderivative_term(c)[1])


def clear_caches() -> None:
    _derive_cached.cache_clear()
    _antiderivative_cached.cache_clear()
