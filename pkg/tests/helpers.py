"""Small builders shared by the test modules."""

from __future__ import annotations

import mpmath

import scalar
from expression import evaluate_text
from series import Series, agree


def S(text: str) -> Series:
    """Evaluate an expression under the active Context."""
    return evaluate_text(text)


def close(a, b, tol: str = "1e-20") -> bool:
    return abs(scalar.to_mpf(a) - scalar.to_mpf(b)) <= mpmath.mpf(tol)


def same(a: Series, b: Series) -> bool:
    return agree(a, b)


MONOMIAL_TEXTS = ["1", "x", "x^-1", "x^2", "log(x)", "x^(1/2)", "x^-3", "x*log(x)^-1"]
