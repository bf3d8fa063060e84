"""Scalar coefficients — exact rationals or mpmath floats behind one interface.

A coefficient is a ``fractions.Fraction`` in rational mode and an
``mpmath.mpf`` in float mode.  mpmath does not mix with Fraction in
arithmetic, so every value entering the kernel goes through ``coerce``.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Union

import mpmath
from sympy import integer_nthroot

from errors import ExactnessUnavailable, NonPositiveArgument, ZeroDivision
from models import get_context

logger = logging.getLogger(__name__)

Coefficient = Union[Fraction, mpmath.mpf]

# Denominator used to snap float values onto nearby simple rationals
_SNAP_DENOMINATOR = 720720


def to_mpf(c) -> mpmath.mpf:
    if isinstance(c, mpmath.mpf):
        return c
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    if isinstance(c, str):
        return mpmath.mpf(c)
    return mpmath.mpf(c)


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, float):
        return Fraction(c).limit_denominator(10**12)
    raise ExactnessUnavailable(f"cannot represent {c!r} as an exact rational")


def coerce(c) -> Coefficient:
    """Bring an int, str, Fraction or mpf into the active backend."""
    if get_context().is_float:
        return snap(to_mpf(c))
    return _to_fraction(c)


def const(p: int, q: int = 1) -> Coefficient:
    if q == 0:
        raise ZeroDivision("zero denominator")
    if get_context().is_float:
        return mpmath.mpf(p) / q
    return Fraction(p, q)


def zero() -> Coefficient:
    return const(0)


def one() -> Coefficient:
    return const(1)


def snap(c: mpmath.mpf) -> mpmath.mpf:
    """Zero out values within tolerance; optionally round onto a simple rational."""
    ctx = get_context()
    if abs(c) <= ctx.zero_tol:
        return mpmath.mpf(0)
    if not ctx.snap_coefficients:
        return c
    scaled = c * _SNAP_DENOMINATOR
    nearest = mpmath.nint(scaled)
    if abs(scaled - nearest) <= ctx.zero_tol * _SNAP_DENOMINATOR and abs(nearest) < 10**12:
        return mpmath.mpf(int(nearest)) / _SNAP_DENOMINATOR
    return c


def exact_if_simple(c) -> Coefficient:
    """Exponents are stored as Fractions whenever they snap to a simple rational."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    tol = get_context().zero_tol
    scaled = to_mpf(c) * _SNAP_DENOMINATOR
    nearest = mpmath.nint(scaled)
    if abs(scaled - nearest) <= tol * _SNAP_DENOMINATOR and abs(nearest) < 10**12:
        return Fraction(int(nearest), _SNAP_DENOMINATOR)
    return c


def is_zero(c) -> bool:
    if isinstance(c, mpmath.mpf):
        return abs(c) <= get_context().zero_tol
    return c == 0


def is_one(c) -> bool:
    return is_zero(sub(c, one()))


def sign(c) -> int:
    if is_zero(c):
        return 0
    return 1 if c > 0 else -1


def equal(a, b) -> bool:
    return is_zero(sub(a, b))


def _pair(a, b):
    if type(a) is type(b):
        return a, b
    if isinstance(a, mpmath.mpf) or isinstance(b, mpmath.mpf):
        return to_mpf(a), to_mpf(b)
    return _to_fraction(a), _to_fraction(b)


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------

def _cancelled(total, a, b):
    """Float sums that lose all but noise to cancellation come out as zero."""
    if isinstance(total, mpmath.mpf) and total:
        scale = max(abs(a), abs(b))
        if abs(total) <= get_context().cancel_tol * scale:
            return mpmath.mpf(0)
    return total


def add(a, b) -> Coefficient:
    a, b = _pair(a, b)
    return _cancelled(a + b, a, b)


def sub(a, b) -> Coefficient:
    a, b = _pair(a, b)
    return _cancelled(a - b, a, b)


def mul(a, b) -> Coefficient:
    a, b = _pair(a, b)
    return a * b


def neg(a) -> Coefficient:
    return -a


def div(a, b) -> Coefficient:
    if is_zero(b):
        raise ZeroDivision("division by a zero coefficient")
    a, b = _pair(a, b)
    return a / b


def inv(a) -> Coefficient:
    return div(one(), a)


def _exact_root(n: int, k: int):
    """Integer k-th root of n when it exists; odd roots of negatives included."""
    if n < 0:
        if k % 2 == 0:
            return None
        r = _exact_root(-n, k)
        return None if r is None else -r
    root, exact = integer_nthroot(n, k)
    return int(root) if exact else None


def power(c, r) -> Coefficient:
    """c^r; exact in rational mode when the result is rational."""
    if get_context().is_float or isinstance(c, mpmath.mpf) or isinstance(r, mpmath.mpf):
        base, exponent = to_mpf(c), to_mpf(r)
        if base == 0 and exponent < 0:
            raise ZeroDivision("negative power of zero")
        if base < 0 and exponent != mpmath.nint(exponent):
            if not (isinstance(r, Fraction) and r.denominator % 2):
                raise NonPositiveArgument("non-integer power of a negative coefficient")
            magnitude = mpmath.power(-base, exponent)
            return snap(-magnitude if r.numerator % 2 else magnitude)
        return snap(mpmath.power(base, exponent))
    c, r = _to_fraction(c), _to_fraction(r)
    if r.denominator == 1:
        if c == 0 and r < 0:
            raise ZeroDivision("negative power of zero")
        return c ** int(r)
    if c < 0 and r.denominator % 2 == 0:
        raise NonPositiveArgument("even root of a negative coefficient")
    num = _exact_root(c.numerator, r.denominator)
    den = _exact_root(c.denominator, r.denominator)
    if num is None or den is None:
        raise ExactnessUnavailable(f"({c})^({r}) is not rational")
    return Fraction(num, den) ** r.numerator


def log_c(c) -> Coefficient:
    if sign(c) <= 0:
        raise NonPositiveArgument(f"log of non-positive coefficient {render(c)}")
    if get_context().is_float:
        return snap(mpmath.log(to_mpf(c)))
    if c == 1:
        return Fraction(0)
    raise ExactnessUnavailable(f"log({c}) is not rational")


def exp_c(c) -> Coefficient:
    if get_context().is_float:
        return snap(mpmath.exp(to_mpf(c)))
    if c == 0:
        return Fraction(1)
    raise ExactnessUnavailable(f"exp({c}) is not rational")


def factorial(k: int) -> Coefficient:
    return coerce(math.factorial(k))


def is_integer(c) -> bool:
    if isinstance(c, Fraction):
        return c.denominator == 1
    if isinstance(c, int):
        return True
    return is_zero(c - mpmath.nint(c))


def compare(a, b) -> int:
    return sign(sub(a, b))


# ---------------------------------------------------------------------------
# Rendering / parsing
# ---------------------------------------------------------------------------

def render(c, *, tagged: bool = False) -> str:
    """Canonical text: ``2/3`` in rational mode, ``0.666…~128`` in float mode.

    Integer-valued floats print bare unless ``tagged`` asks for the tag.
    """
    if isinstance(c, mpmath.mpf):
        bits = get_context().precision_bits
        digits = max(6, int(bits * 0.30103) - 2)
        if is_integer(c) and abs(c) < 10**15:
            text = str(int(mpmath.nint(c)))
            return f"{text}~{bits}" if tagged else text
        return f"{mpmath.nstr(c, digits, strip_zeros=True)}~{bits}"
    c = _to_fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def parse_literal(text: str) -> Coefficient:
    """Parse a numeric literal (``3``, ``2.5``, ``1e-3``, ``0.5~128``) into the active backend."""
    text = text.strip().split("~", 1)[0]
    if get_context().is_float:
        return snap(mpmath.mpf(text))
    try:
        return Fraction(text)
    except ValueError as exc:
        raise ExactnessUnavailable(f"cannot read {text!r} as a rational") from exc


def parse_coefficient(text: str) -> Coefficient:
    """Inverse of ``render``: accepts ``p/q`` and decimal forms, with or without a tag."""
    text = text.strip().split("~", 1)[0]
    if "/" in text:
        p, q = text.split("/", 1)
        return div(parse_literal(p), parse_literal(q))
    return parse_literal(text)
