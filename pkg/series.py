"""Truncated transseries — sorted terms plus an optional O(cutoff) precision bound.

``terms`` is a tuple of (coefficient, TransMonomial) pairs in strictly
decreasing monomial order.  ``cutoff`` bounds everything that was dropped:
the true value differs from the retained terms by something ⪯ cutoff.
``cutoff is None`` means the series is exact.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import mpmath

import scalar
from errors import (
    NonConvergent,
    NotContracting,
    PrecisionExhausted,
    PreconditionError,
    ZeroDivision,
)
from models import Dominance, Ordering, get_context
from monomial import (
    ONE,
    X,
    TransMonomial,
    cmp_m,
    inv_m,
    max_monomial,
    mul_m,
    pow_m,
    sort_key,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Series:
    terms: tuple = ()
    cutoff: Optional[TransMonomial] = None

    # ----------------------------------------------------------------- builders

    @classmethod
    def zero(cls) -> "Series":
        return cls()

    @classmethod
    def constant(cls, c) -> "Series":
        c = scalar.coerce(c)
        return cls() if scalar.is_zero(c) else cls(((c, ONE),))

    @classmethod
    def one(cls) -> "Series":
        return cls.constant(1)

    @classmethod
    def monomial(cls, m: TransMonomial, c=1) -> "Series":
        c = scalar.coerce(c)
        return cls() if scalar.is_zero(c) else cls(((c, m),))

    @classmethod
    def x(cls) -> "Series":
        return cls.monomial(X)

    @classmethod
    def big_o(cls, m: TransMonomial) -> "Series":
        return cls((), m)

    @classmethod
    def from_terms(
        cls,
        terms: Iterable,
        cutoff: Optional[TransMonomial] = None,
        *,
        truncate: bool = True,
    ) -> "Series":
        """Build from unsorted terms, merging equal monomials."""
        items = sorted(terms, key=lambda t: _KEY(t[1]))
        merged: list = []
        for c, m in items:
            if merged and cmp_m(merged[-1][1], m) == 0:
                merged[-1] = (scalar.add(merged[-1][0], c), merged[-1][1])
            else:
                merged.append((c, m))
        return _normalize(merged, cutoff, truncate)

    # ------------------------------------------------------------- inspection

    @property
    def is_zero(self) -> bool:
        """Exactly zero: no terms and no precision loss."""
        return not self.terms and self.cutoff is None

    @property
    def is_exact(self) -> bool:
        return self.cutoff is None

    def leading_monomial(self) -> Optional[TransMonomial]:
        """Dominant monomial, or the cutoff when no term survived; None for exact 0."""
        if self.terms:
            return self.terms[0][1]
        return self.cutoff

    def dominant_term(self) -> tuple:
        if self.terms:
            return self.terms[0]
        if self.cutoff is not None:
            raise PrecisionExhausted("no term survives above the cutoff")
        raise PreconditionError("the zero series has no dominant term")

    def dominant_monomial(self) -> TransMonomial:
        return self.dominant_term()[1]

    def sign(self) -> int:
        return sign_of(self)

    def is_infinite(self) -> bool:
        return dominance(self, Series.one()) is Dominance.SUCCEEDS

    def is_infinitesimal(self) -> bool:
        return dominance(self, Series.one()) is Dominance.PRECEDES

    def support(self) -> list:
        return [m for _, m in self.terms]

    def coefficient(self, m: TransMonomial):
        for c, n in self.terms:
            if cmp_m(n, m) == 0:
                return c
        return scalar.zero()

    # -------------------------------------------------------------- operators

    def __add__(self, other) -> "Series":
        return add(self, lift(other))

    __radd__ = __add__

    def __sub__(self, other) -> "Series":
        return sub(self, lift(other))

    def __rsub__(self, other) -> "Series":
        return sub(lift(other), self)

    def __mul__(self, other) -> "Series":
        if isinstance(other, Series):
            return mul(self, other)
        if isinstance(other, TransMonomial):
            return shift(self, other)
        return scale(self, scalar.coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> "Series":
        return neg(self)

    def __truediv__(self, other) -> "Series":
        if isinstance(other, Series):
            return div(self, other)
        if isinstance(other, TransMonomial):
            return shift(self, inv_m(other))
        return scale(self, scalar.inv(scalar.coerce(other)))

    def __rtruediv__(self, other) -> "Series":
        return div(lift(other), self)

    def __pow__(self, r) -> "Series":
        if isinstance(r, int):
            return power_int(self, r)
        from translog import pow_s

        return pow_s(self, r)

    def __str__(self) -> str:
        from formatting import format_series

        return format_series(self)


_KEY = sort_key()


def lift(value) -> Series:
    if isinstance(value, Series):
        return value
    if isinstance(value, TransMonomial):
        return Series.monomial(value)
    return Series.constant(value)


def _normalize(terms: list, cutoff: Optional[TransMonomial], truncate: bool) -> Series:
    """Drop zeros and terms ⪯ cutoff; keep at most max_terms terms."""
    limit = get_context().max_terms if truncate else None
    out = []
    dropped = None
    for c, m in terms:
        if isinstance(c, mpmath.mpf):
            c = scalar.snap(c)
        if scalar.is_zero(c):
            continue
        if cutoff is not None and cmp_m(m, cutoff) <= 0:
            break
        if limit is not None and len(out) >= limit:
            dropped = m
            break
        out.append((c, m))
    if dropped is not None:
        logger.debug("truncated at %d terms, cutoff %s", limit, dropped)
        cutoff = max_monomial(cutoff, dropped)
    return Series(tuple(out), cutoff)


# ---------------------------------------------------------------------------
# Ring operations
# ---------------------------------------------------------------------------

def _merge(a: tuple, b: tuple, sign_b: int = 1) -> list:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        s = cmp_m(a[i][1], b[j][1])
        if s > 0:
            out.append(a[i])
            i += 1
        elif s < 0:
            c, m = b[j]
            out.append((c if sign_b > 0 else -c, m))
            j += 1
        else:
            cb = b[j][0] if sign_b > 0 else -b[j][0]
            out.append((scalar.add(a[i][0], cb), a[i][1]))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend((c if sign_b > 0 else -c, m) for c, m in b[j:])
    return out


def add(s: Series, t: Series) -> Series:
    if s.is_zero:
        return t
    if t.is_zero:
        return s
    return _normalize(_merge(s.terms, t.terms), max_monomial(s.cutoff, t.cutoff), True)


def add_exact(s: Series, t: Series) -> Series:
    """Sum without truncation; used for exponents inside monomials."""
    return _normalize(_merge(s.terms, t.terms), max_monomial(s.cutoff, t.cutoff), False)


def sub(s: Series, t: Series) -> Series:
    if t.is_zero:
        return s
    return _normalize(_merge(s.terms, t.terms, -1), max_monomial(s.cutoff, t.cutoff), True)


def neg(s: Series) -> Series:
    return Series(tuple((-c, m) for c, m in s.terms), s.cutoff)


def scale(s: Series, c) -> Series:
    if scalar.is_zero(c):
        return Series()
    return Series(tuple((scalar.mul(a, c), m) for a, m in s.terms), s.cutoff)


def shift(s: Series, m: TransMonomial) -> Series:
    """Multiply every monomial (and the cutoff) by 𝔪."""
    if m.is_one:
        return s
    cutoff = None if s.cutoff is None else mul_m(s.cutoff, m)
    return Series(tuple((c, mul_m(n, m)) for c, n in s.terms), cutoff)


class _Pending:
    __slots__ = ("m", "i", "j")

    def __init__(self, m: TransMonomial, i: int, j: int) -> None:
        self.m, self.i, self.j = m, i, j

    def __lt__(self, other: "_Pending") -> bool:
        # heapq is a min-heap; larger monomials come out first
        return cmp_m(self.m, other.m) > 0


def mul(s: Series, t: Series) -> Series:
    if s.is_zero or t.is_zero:
        return Series()
    a, b = s.terms, t.terms
    bounds = []
    if s.cutoff is not None:
        bounds.append(mul_m(s.cutoff, b[0][1]) if b else mul_m(s.cutoff, t.cutoff))
    if t.cutoff is not None:
        bounds.append(mul_m(a[0][1], t.cutoff) if a else mul_m(s.cutoff, t.cutoff))
    cutoff = max_monomial(*bounds)
    if not a or not b:
        return Series((), cutoff)

    limit = get_context().max_terms
    out: list = []
    heap = [_Pending(mul_m(a[0][1], b[0][1]), 0, 0)]
    group_m, group_c = None, None
    dropped = None

    def flush() -> bool:
        nonlocal dropped
        if group_m is None or scalar.is_zero(group_c):
            return False
        if len(out) >= limit:
            dropped = group_m
            return True
        out.append((group_c, group_m))
        return False

    stopped = False
    while heap:
        item = heapq.heappop(heap)
        if cutoff is not None and cmp_m(item.m, cutoff) <= 0:
            break
        i, j = item.i, item.j
        if j + 1 < len(b):
            heapq.heappush(heap, _Pending(mul_m(a[i][1], b[j + 1][1]), i, j + 1))
        if j == 0 and i + 1 < len(a):
            heapq.heappush(heap, _Pending(mul_m(a[i + 1][1], b[0][1]), i + 1, 0))
        c = scalar.mul(a[i][0], b[j][0])
        if group_m is not None and cmp_m(item.m, group_m) == 0:
            group_c = scalar.add(group_c, c)
            continue
        if flush():
            stopped = True
            break
        group_m, group_c = item.m, c
    if not stopped:
        flush()
    return _normalize(out, max_monomial(cutoff, dropped), True)


def power_int(s: Series, n: int) -> Series:
    if n < 0:
        return reciprocal(power_int(s, -n))
    result = Series.one()
    base = s
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def power_series(coefficient: Callable[[int], object], eps: Series) -> Series:
    """Σ_k a_k ε^k for ε ≺ 1, stopping once terms fall below the running cutoff."""
    ctx = get_context()
    total = Series.constant(coefficient(0))
    if eps.is_zero:
        return total
    lead = eps.leading_monomial()
    if cmp_m(lead, ONE) >= 0:
        if not eps.terms:
            raise PrecisionExhausted("series argument is not known to be infinitesimal")
        raise PreconditionError("power series argument must be infinitesimal")

    cap = max(2 * ctx.max_terms + 2, ctx.max_fixpoint_iters)
    p = Series.one()
    for k in range(1, cap + 1):
        p = mul(p, eps)
        top = p.leading_monomial()
        if top is None:
            return total
        if total.cutoff is not None and cmp_m(top, total.cutoff) <= 0:
            return total
        a = scalar.coerce(coefficient(k))
        if not scalar.is_zero(a):
            total = add(total, scale(p, a))
        elif not p.terms:
            total = add(total, Series((), p.cutoff))
    logger.info("power series stopped after %d terms", cap)
    return add(total, Series((), pow_m(lead, cap + 1)))


def reciprocal(s: Series) -> Series:
    if s.is_zero:
        raise ZeroDivision("division by zero series")
    c, m = s.dominant_term()
    eps = sub(shift(scale(s, scalar.inv(c)), inv_m(m)), Series.one())
    geometric = power_series(lambda k: -1 if k % 2 else 1, eps)
    return scale(shift(geometric, inv_m(m)), scalar.inv(c))


def div(s: Series, t: Series) -> Series:
    if t.is_zero:
        raise ZeroDivision("division by zero series")
    if s.is_zero:
        return s
    return mul(s, reciprocal(t))


# ---------------------------------------------------------------------------
# Ordering
# ---------------------------------------------------------------------------

def sign_of(s: Series) -> int:
    if s.terms:
        return scalar.sign(s.terms[0][0])
    if s.cutoff is not None:
        raise PrecisionExhausted("sign is not determined above the cutoff")
    return 0


def compare(s: Series, t: Series) -> Ordering:
    return Ordering.of(sign_of(sub(lift(s), lift(t))))


def dominance(s: Series, t: Series) -> Dominance:
    s, t = lift(s), lift(t)
    ms = s.terms[0][1] if s.terms else None
    mt = t.terms[0][1] if t.terms else None
    if ms is None and mt is None:
        if s.cutoff is not None or t.cutoff is not None:
            raise PrecisionExhausted("dominance of two unresolved series")
        return Dominance.ASYMPTOTIC
    if ms is None:
        if s.cutoff is None or cmp_m(s.cutoff, mt) < 0:
            return Dominance.PRECEDES
        raise PrecisionExhausted("dominant monomial hidden by the cutoff")
    if mt is None:
        if t.cutoff is None or cmp_m(t.cutoff, ms) < 0:
            return Dominance.SUCCEEDS
        raise PrecisionExhausted("dominant monomial hidden by the cutoff")
    r = cmp_m(ms, mt)
    if r > 0:
        return Dominance.SUCCEEDS
    if r < 0:
        return Dominance.PRECEDES
    return Dominance.ASYMPTOTIC


def agree(s: Series, t: Series) -> bool:
    """True when s and t coincide on every term above both cutoffs."""
    return not sub(lift(s), lift(t)).terms


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------

def purely_large_part(s: Series) -> Series:
    if s.cutoff is not None and cmp_m(s.cutoff, ONE) > 0:
        raise PrecisionExhausted("large part is not determined above the cutoff")
    return Series(tuple((c, m) for c, m in s.terms if cmp_m(m, ONE) > 0))


def constant_term(s: Series):
    if s.cutoff is not None and cmp_m(s.cutoff, ONE) >= 0:
        raise PrecisionExhausted("constant term is not determined above the cutoff")
    for c, m in s.terms:
        if m.is_one:
            return c
    return scalar.zero()


def infinitesimal_part(s: Series) -> Series:
    if s.cutoff is not None and cmp_m(s.cutoff, ONE) >= 0:
        raise PrecisionExhausted("infinitesimal part is not determined above the cutoff")
    return Series(tuple((c, m) for c, m in s.terms if cmp_m(m, ONE) < 0), s.cutoff)


def truncate_below(s: Series, m: TransMonomial) -> Series:
    """Keep only terms ≻ 𝔪 and record O(𝔪)."""
    return _normalize(list(s.terms), max_monomial(s.cutoff, m), True)


# ---------------------------------------------------------------------------
# Linear maps and fixed points
# ---------------------------------------------------------------------------

def apply_linear(
    fn: Callable[[TransMonomial], Series],
    s: Series,
    bound: Optional[Callable[[TransMonomial], Optional[TransMonomial]]] = None,
) -> Series:
    """Extend a monomial map termwise; ``bound`` maps the cutoff of s."""
    collected = []
    cutoffs = []
    for c, m in s.terms:
        image = fn(m)
        collected.extend((scalar.mul(c, ic), im) for ic, im in image.terms)
        cutoffs.append(image.cutoff)
    if s.cutoff is not None:
        if bound is None:
            raise PreconditionError("no bound for the image of the cutoff")
        cutoffs.append(bound(s.cutoff))
    return Series.from_terms(collected, max_monomial(*cutoffs))


def neumann_invert(
    phi: Callable[[TransMonomial], Series], s: Series, *, truncate: bool = False
) -> Series:
    """Solve u + φ(u) = s for a strictly contracting linear φ (φ(𝔪) ≺ 𝔪).

    Raises NonConvergent when the iteration cap is reached with terms still
    above the cutoff; ``truncate=True`` returns the partial sum with an O(·)
    bound instead.
    """
    ctx = get_context()
    cache: dict = {}

    def contracted(m: TransMonomial) -> Series:
        if m not in cache:
            image = phi(m)
            top = image.leading_monomial()
            if top is not None and cmp_m(top, m) >= 0:
                raise NotContracting(f"operator does not contract {m}")
            cache[m] = image
        return cache[m]

    total = s
    term = s
    for k in range(1, ctx.max_fixpoint_iters + 1):
        term = neg(apply_linear(contracted, term, bound=lambda c: c))
        top = term.leading_monomial()
        if top is None:
            return total
        if total.cutoff is not None and cmp_m(top, total.cutoff) <= 0:
            return total
        total = add(total, term)
    rest = apply_linear(contracted, term, bound=lambda c: c).leading_monomial()
    if rest is None or (total.cutoff is not None and cmp_m(rest, total.cutoff) <= 0):
        return total
    if not truncate:
        raise NonConvergent(f"Neumann series still moving after {ctx.max_fixpoint_iters} rounds")
    logger.info("Neumann series capped after %d rounds", ctx.max_fixpoint_iters)
    return add(total, Series((), rest))
