"""Canonical text rendering and JSON records for series."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional

import scalar
from monomial import TransMonomial


def _exponent_text(a) -> str:
    if scalar.is_integer(a):
        return scalar.render(a)
    return f"({scalar.render(a)})"


def _log_base(k: int) -> str:
    if k == 0:
        return "x"
    if k == 1:
        return "log(x)"
    return f"log^{k}(x)"


def format_monomial(m: TransMonomial) -> str:
    """``x^a * log(x)^b * log^2(x)^c * exp(P)``; ``1`` for the unit."""
    parts = []
    for k, a in enumerate(m.log_powers):
        if scalar.is_zero(a):
            continue
        base = _log_base(k)
        parts.append(base if scalar.is_one(a) else f"{base}^{_exponent_text(a)}")
    if m.exp_part is not None:
        parts.append(f"exp({format_series(m.exp_part)})")
    return " * ".join(parts) if parts else "1"


def _term_text(c, m: TransMonomial) -> str:
    magnitude = c if scalar.sign(c) > 0 else scalar.neg(c)
    if m.is_one:
        return scalar.render(magnitude)
    mono = format_monomial(m)
    if scalar.is_one(magnitude):
        return mono
    return f"{scalar.render(magnitude)}*{mono}"


def format_series(s) -> str:
    pieces = []
    for c, m in s.terms:
        text = _term_text(c, m)
        negative = scalar.sign(c) < 0
        if not pieces:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f" - {text}" if negative else f" + {text}")
    if s.cutoff is not None:
        bound = f"O({format_monomial(s.cutoff)})"
        pieces.append(f" + {bound}" if pieces else bound)
    return "".join(pieces) if pieces else "0"


# ---------------------------------------------------------------------------
# JSON records
# ---------------------------------------------------------------------------

def monomial_record(m: Optional[TransMonomial]) -> Optional[dict]:
    if m is None:
        return None
    return {
        "log_powers": [scalar.render(a, tagged=True) for a in m.log_powers],
        "exp_part": None if m.exp_part is None else to_record(m.exp_part),
    }


def to_record(s) -> dict:
    return {
        "terms": [[scalar.render(c, tagged=True), monomial_record(m)] for c, m in s.terms],
        "cutoff": monomial_record(s.cutoff),
    }


def monomial_from_record(record: Optional[dict]) -> Optional[TransMonomial]:
    if record is None:
        return None
    powers = []
    for text in record["log_powers"]:
        try:
            powers.append(Fraction(text))
        except ValueError:
            powers.append(scalar.parse_coefficient(text))
    exp_part = None if record.get("exp_part") is None else from_record(record["exp_part"])
    return TransMonomial(tuple(powers), exp_part)


def from_record(record: dict) -> Any:
    from series import Series

    terms = [
        (scalar.parse_coefficient(c), monomial_from_record(m)) for c, m in record["terms"]
    ]
    return Series.from_terms(terms, monomial_from_record(record.get("cutoff")), truncate=False)
