"""Transmonomials — x^a0 · log(x)^a1 ··· log_d(x)^ad · exp(P) in canonical form."""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Optional

import scalar
from errors import DepthBudgetExceeded
from models import Flatness, get_context

if TYPE_CHECKING:
    from series import Series

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransMonomial:
    """``log_powers[k]`` is the exponent of ℓ_k (ℓ_0 = x); ``exp_part`` is a purely
    large exact Series or None.  Use ``make`` rather than the constructor so
    single iterated logs inside the exponent are folded into ``log_powers``."""

    log_powers: tuple = ()
    exp_part: Optional["Series"] = None

    def __post_init__(self) -> None:
        powers = tuple(scalar.exact_if_simple(a) for a in self.log_powers)
        while powers and scalar.is_zero(powers[-1]):
            powers = powers[:-1]
        object.__setattr__(self, "log_powers", powers)
        if self.exp_part is not None and not self.exp_part.terms:
            object.__setattr__(self, "exp_part", None)

    @property
    def is_one(self) -> bool:
        return not self.log_powers and self.exp_part is None

    @property
    def height(self) -> int:
        if self.exp_part is None:
            return 0
        return 1 + max(m.height for _, m in self.exp_part.terms)

    @property
    def depth(self) -> int:
        """Largest iterated-log index used anywhere in the monomial."""
        d = len(self.log_powers) - 1
        if self.exp_part is not None:
            d = max([d] + [m.depth for _, m in self.exp_part.terms])
        return max(d, 0)

    def power(self, k: int):
        return self.log_powers[k] if k < len(self.log_powers) else Fraction(0)

    def __mul__(self, other: "TransMonomial") -> "TransMonomial":
        return mul_m(self, other)

    def __truediv__(self, other: "TransMonomial") -> "TransMonomial":
        return div_m(self, other)

    def __str__(self) -> str:
        from formatting import format_monomial

        return format_monomial(self)


ONE = TransMonomial()
X = TransMonomial((Fraction(1),))


def ell(k: int, power=Fraction(1)) -> TransMonomial:
    """ℓ_k raised to ``power``; ℓ_0 = x, ℓ_{k+1} = log ℓ_k."""
    return TransMonomial((Fraction(0),) * k + (power,))


def _single_log_index(m: TransMonomial) -> Optional[int]:
    if m.exp_part is not None or len(m.log_powers) < 2:
        return None
    if not scalar.is_one(m.log_powers[-1]):
        return None
    if any(not scalar.is_zero(a) for a in m.log_powers[:-1]):
        return None
    return len(m.log_powers) - 1


def make(log_powers: Iterable = (), exp_part: Optional["Series"] = None) -> TransMonomial:
    powers = list(log_powers)
    if exp_part is not None and exp_part.terms:
        from series import Series

        kept = []
        for c, m in exp_part.terms:
            j = _single_log_index(m)
            if j is None:
                kept.append((c, m))
                continue
            while len(powers) < j:
                powers.append(Fraction(0))
            powers[j - 1] = scalar.add(powers[j - 1], c)
        exp_part = Series(tuple(kept)) if kept else None
    return TransMonomial(tuple(powers), exp_part)


def exp_of(large: "Series") -> TransMonomial:
    """The monomial e^L for a purely large exact series L."""
    return make((), large)


# ---------------------------------------------------------------------------
# Group operations
# ---------------------------------------------------------------------------

def _zip_powers(a: tuple, b: tuple, fn) -> list:
    n = max(len(a), len(b))
    a = a + (Fraction(0),) * (n - len(a))
    b = b + (Fraction(0),) * (n - len(b))
    return [fn(p, q) for p, q in zip(a, b)]


@functools.lru_cache(maxsize=1 << 15)
def _mul_cached(a: TransMonomial, b: TransMonomial, _key) -> TransMonomial:
    from series import add_exact

    powers = _zip_powers(a.log_powers, b.log_powers, scalar.add)
    if a.exp_part is None:
        exp_part = b.exp_part
    elif b.exp_part is None:
        exp_part = a.exp_part
    else:
        exp_part = add_exact(a.exp_part, b.exp_part)
    return TransMonomial(tuple(powers), exp_part)


def mul_m(a: TransMonomial, b: TransMonomial) -> TransMonomial:
    if a.is_one:
        return b
    if b.is_one:
        return a
    return _mul_cached(a, b, get_context().cache_key)


def pow_m(m: TransMonomial, r) -> TransMonomial:
    if scalar.is_zero(r):
        return ONE
    if scalar.is_one(r):
        return m
    from series import scale

    powers = tuple(scalar.mul(a, r) for a in m.log_powers)
    exp_part = None if m.exp_part is None else scale(m.exp_part, scalar.coerce(r))
    return TransMonomial(powers, exp_part)


def inv_m(m: TransMonomial) -> TransMonomial:
    return pow_m(m, Fraction(-1))


def div_m(a: TransMonomial, b: TransMonomial) -> TransMonomial:
    return mul_m(a, inv_m(b))


# ---------------------------------------------------------------------------
# Logarithm and ordering
# ---------------------------------------------------------------------------

def log_series(m: TransMonomial, *, checked: bool = False) -> "Series":
    """log 𝔪 = P + Σ a_k ℓ_{k+1} as an exact purely large series."""
    from series import Series

    terms = list(m.exp_part.terms) if m.exp_part is not None else []
    for k, a in enumerate(m.log_powers):
        if scalar.is_zero(a):
            continue
        if checked and k + 1 > get_context().max_log_depth:
            raise DepthBudgetExceeded(
                f"log of {m} needs log_{k + 1}, beyond max_log_depth"
            )
        terms.append((scalar.coerce(a), ell(k + 1)))
    return Series.from_terms(terms, truncate=False)


def log_m(m: TransMonomial) -> "Series":
    return log_series(m, checked=True)


def cmp_m(a: TransMonomial, b: TransMonomial) -> int:
    """-1, 0 or 1 as a ≺ b, a = b, a ≻ b in the monomial order."""
    if a is b or a == b:
        return 0
    return _cmp_cached(a, b, get_context().cache_key)


@functools.lru_cache(maxsize=1 << 16)
def _cmp_cached(a: TransMonomial, b: TransMonomial, _key) -> int:
    if a.exp_part is None and b.exp_part is None:
        for p, q in zip(*(_pad(a.log_powers, b.log_powers))):
            s = scalar.compare(p, q)
            if s:
                return s
        return 0
    from series import sub

    diff = sub(log_series(a), log_series(b))
    if not diff.terms:
        return 0
    return scalar.sign(diff.terms[0][0])


def _pad(a: tuple, b: tuple) -> tuple:
    n = max(len(a), len(b))
    return a + (Fraction(0),) * (n - len(a)), b + (Fraction(0),) * (n - len(b))


def max_monomial(*ms: Optional[TransMonomial]) -> Optional[TransMonomial]:
    best = None
    for m in ms:
        if m is None:
            continue
        if best is None or cmp_m(m, best) > 0:
            best = m
    return best


def sort_key():
    """Key for sorting monomials in decreasing order."""
    return functools.cmp_to_key(lambda a, b: cmp_m(b, a))


def flat_cmp_m(a: TransMonomial, b: TransMonomial) -> Flatness:
    """Compare log 𝔞 with log 𝔟; the class of 1 is the flattest."""
    la, lb = log_series(a), log_series(b)
    if not la.terms and not lb.terms:
        return Flatness.SAME_CLASS
    if not la.terms:
        return Flatness.STRICTLY_FLATTER
    if not lb.terms:
        return Flatness.STRICTLY_STEEPER
    s = cmp_m(la.terms[0][1], lb.terms[0][1])
    if s > 0:
        return Flatness.STRICTLY_STEEPER
    if s < 0:
        return Flatness.STRICTLY_FLATTER
    return Flatness.SAME_CLASS


def clear_caches() -> None:
    _mul_cached.cache_clear()
    _cmp_cached.cache_clear()
