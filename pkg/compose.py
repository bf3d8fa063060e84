"""Right composition f∘s for positive infinite s, plus the Taylor engine."""

from __future__ import annotations

import functools
import logging
from typing import Optional

import scalar
from calculus import derive, integrate, log_derivative_m
from errors import NonConvergent, NotPositiveInfinite, NotTaylorConfigured, PrecisionExhausted
from models import Dominance, get_context
from monomial import TransMonomial, X, cmp_m
from series import (
    Series,
    add,
    apply_linear,
    dominance,
    lift,
    mul,
    scale,
    sign_of,
    sub,
)
from translog import exp_s, log_s, pow_s

logger = logging.getLogger(__name__)


class _LogChain:
    """L_0 = s, L_{k+1} = log L_k, computed on demand."""

    def __init__(self, s: Series) -> None:
        self.levels = [s]

    def __getitem__(self, k: int) -> Series:
        while len(self.levels) <= k:
            self.levels.append(log_s(self.levels[-1]))
        return self.levels[k]


def require_positive_infinite(s: Series) -> None:
    if s.is_zero or sign_of(s) <= 0:
        raise NotPositiveInfinite(f"{s} is not positive")
    if dominance(s, Series.one()) is not Dominance.SUCCEEDS:
        raise NotPositiveInfinite(f"{s} is not infinite")


def _is_identity(s: Series) -> bool:
    return s.cutoff is None and len(s.terms) == 1 and s.terms[0][1] == X and scalar.is_one(s.terms[0][0])


def _shift_part(s: Series) -> Optional[Series]:
    """δ = s − x when δ ≺ x, else None."""
    delta = sub(s, Series.monomial(X))
    try:
        if dominance(delta, Series.monomial(X)) is Dominance.PRECEDES:
            return delta
    except PrecisionExhausted:
        pass
    return None


class _Composer:
    """Right composition with a fixed argument s; monomial images are memoized.

    When s = x + δ with δ ≺ x, monomials with 𝔪†·δ ≺ 1 are expanded as
    Σ 𝔪^(k)·δ^k/k!; all others go through the log chain of s.
    """

    def __init__(self, s: Series) -> None:
        self.s = s
        self.chain = _LogChain(s)
        self.images: dict = {}
        self.delta = _shift_part(s)
        self.delta_powers = [Series.one()]

    def __call__(self, f: Series) -> Series:
        return apply_linear(self.image, f, bound=lambda c: self.image(c).leading_monomial())

    def image(self, m: TransMonomial) -> Series:
        if m not in self.images:
            result = self._taylor(m)
            self.images[m] = self._structural(m) if result is None else result
        return self.images[m]

    def _structural(self, m: TransMonomial) -> Series:
        result = Series.one()
        for k, a in enumerate(m.log_powers):
            if scalar.is_zero(a):
                continue
            result = mul(result, pow_s(self.chain[k], a))
        if m.exp_part is not None:
            result = mul(result, exp_s(self(m.exp_part)))
        return result

    def _delta_power(self, k: int) -> Series:
        while len(self.delta_powers) <= k:
            self.delta_powers.append(mul(self.delta_powers[-1], self.delta))
        return self.delta_powers[k]

    def _taylor(self, m: TransMonomial) -> Optional[Series]:
        if self.delta is None or m.is_one:
            return None
        gauge = mul(log_derivative_m(m), self.delta)
        try:
            if not gauge.is_zero and dominance(gauge, Series.one()) is not Dominance.PRECEDES:
                return None
        except PrecisionExhausted:
            return None
        ctx = get_context()
        total = Series.monomial(m)
        deriv = total
        factorial = scalar.one()
        for k in range(1, ctx.max_fixpoint_iters + 1):
            deriv = derive(deriv)
            if deriv.is_zero:
                return total
            factorial = scalar.mul(factorial, scalar.coerce(k))
            term = scale(mul(deriv, self._delta_power(k)), scalar.inv(factorial))
            top = term.leading_monomial()
            if top is None:
                continue
            if total.cutoff is not None and cmp_m(top, total.cutoff) <= 0:
                return total
            total = add(total, term)
        logger.debug("Taylor image of %s did not settle; using the log chain", m)
        return None


@functools.lru_cache(maxsize=256)
def _composer(s: Series, _key) -> _Composer:
    return _Composer(s)


def compose(f: Series, s) -> Series:
    s = lift(s)
    require_positive_infinite(s)
    if _is_identity(s) or f.is_zero:
        return f
    return _composer(s, get_context().cache_key)(f)


def compose_monomial(m: TransMonomial, s) -> Series:
    return compose(Series.monomial(m), s)


def clear_caches() -> None:
    _composer.cache_clear()


def taylor_compose(f: Series, s, delta: Series) -> Series:
    """f∘(s + δ) as Σ (f^(k)∘s)·δ^k / k!, for a Taylor-configured (f, s, δ)."""
    s, delta = lift(s), lift(delta)
    if delta.is_zero:
        return compose(f, s)
    require_positive_infinite(s)
    if dominance(delta, s) is not Dominance.PRECEDES:
        raise NotTaylorConfigured("perturbation is not dominated by the base point")
    for m in f.support():
        gauge = mul(compose(log_derivative_m(m), s), delta)
        if not gauge.is_zero and dominance(gauge, Series.one()) is not Dominance.PRECEDES:
            raise NotTaylorConfigured(f"(𝔪†∘s)·δ is not infinitesimal for 𝔪 = {m}")

    ctx = get_context()
    total = compose(f, s)
    deriv = f
    power = Series.one()
    factorial = scalar.one()
    for k in range(1, ctx.max_fixpoint_iters + 1):
        deriv = derive(deriv)
        if deriv.is_zero:
            return total
        power = mul(power, delta)
        factorial = scalar.mul(factorial, scalar.coerce(k))
        term = scale(mul(compose(deriv, s), power), scalar.inv(factorial))
        top = term.leading_monomial()
        if top is None:
            continue
        if total.cutoff is not None and cmp_m(top, total.cutoff) <= 0:
            return total
        total = add(total, term)
    raise NonConvergent("Taylor expansion did not reach the cutoff")


def definite_integral(f: Series, s, t) -> Series:
    """∫_s^t f = (∫f)∘t − (∫f)∘s."""
    F = integrate(f)
    return sub(compose(F, t), compose(F, s))
