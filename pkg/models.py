"""Data models — enums, the kernel Context and result records."""

from __future__ import annotations

import contextlib
import contextvars
import enum
from dataclasses import dataclass, field, replace as _replace
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Iterator, Optional

import mpmath

import config

if TYPE_CHECKING:
    from series import Series


# ---------------------------------------------------------------------------
# Enums
# ---------------------------------------------------------------------------

class ScalarMode(str, enum.Enum):
    RATIONAL = "rational"
    FLOAT = "float"


class Ordering(str, enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"

    @classmethod
    def of(cls, sign: int) -> "Ordering":
        if sign < 0:
            return cls.LESS
        if sign > 0:
            return cls.GREATER
        return cls.EQUAL


class Dominance(str, enum.Enum):
    """Asymptotic dominance: s ≺ t, s ≍ t or s ≻ t."""

    PRECEDES = "Precedes"
    ASYMPTOTIC = "Asymptotic"
    SUCCEEDS = "Succeeds"


class Flatness(str, enum.Enum):
    STRICTLY_FLATTER = "StrictlyFlatter"
    SAME_CLASS = "SameClass"
    STRICTLY_STEEPER = "StrictlySteeper"


class CommutatorSign(str, enum.Enum):
    NEGATIVE = "Negative"
    ZERO = "Zero"
    POSITIVE = "Positive"


# ---------------------------------------------------------------------------
# Context
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Context:
    max_terms: int = 30
    max_log_depth: int = 4
    max_exp_height: int = 4
    max_fixpoint_iters: int = 60
    scalar_mode: ScalarMode = ScalarMode.RATIONAL
    precision_bits: int = 128
    zero_tol: Any = field(default=None)
    snap_coefficients: bool = False

    def __post_init__(self) -> None:
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")
        if self.max_log_depth < 0 or self.max_exp_height < 0:
            raise ValueError("depth budgets must be non-negative")
        if not isinstance(self.scalar_mode, ScalarMode):
            object.__setattr__(self, "scalar_mode", ScalarMode(self.scalar_mode))
        if self.zero_tol is None:
            object.__setattr__(self, "zero_tol", mpmath.mpf("1e-30"))
        elif not isinstance(self.zero_tol, mpmath.mpf):
            object.__setattr__(self, "zero_tol", mpmath.mpf(str(self.zero_tol)))

    @classmethod
    def from_config(cls) -> "Context":
        return cls(
            max_terms=config.MAX_TERMS,
            max_log_depth=config.MAX_LOG_DEPTH,
            max_exp_height=config.MAX_EXP_HEIGHT,
            max_fixpoint_iters=config.MAX_FIXPOINT_ITERS,
            scalar_mode=ScalarMode(config.SCALAR_MODE),
            precision_bits=config.PRECISION_BITS,
            zero_tol=config.ZERO_TOL,
            snap_coefficients=config.SNAP_COEFFICIENTS,
        )

    def replace(self, **changes: Any) -> "Context":
        return _replace(self, **changes)

    @property
    def is_float(self) -> bool:
        return self.scalar_mode is ScalarMode.FLOAT

    @property
    def cancel_tol(self) -> mpmath.mpf:
        """Relative size below which a float sum counts as pure cancellation."""
        return mpmath.ldexp(1, -(self.precision_bits // 2))

    @property
    def cache_key(self) -> tuple:
        """Everything that can change the result of a cached kernel call."""
        return (
            self.max_terms,
            self.max_log_depth,
            self.max_exp_height,
            self.max_fixpoint_iters,
            self.scalar_mode,
            self.precision_bits,
            str(self.zero_tol),
            self.snap_coefficients,
        )

    @contextlib.contextmanager
    def activate(self) -> Iterator["Context"]:
        token = _current.set(self)
        try:
            if mpmath.mp.prec == self.precision_bits:
                yield self
            else:
                with mpmath.workprec(self.precision_bits):
                    yield self
        finally:
            _current.reset(token)


_current: contextvars.ContextVar[Optional[Context]] = contextvars.ContextVar(
    "transseries_context", default=None
)


def get_context() -> Context:
    ctx = _current.get()
    if ctx is None:
        ctx = Context.from_config()
        _current.set(ctx)
    return ctx


def use_context(ctx: Optional[Context] = None, **changes: Any):
    """``with use_context(max_terms=8): ...`` — run a block under a modified Context."""
    base = ctx if ctx is not None else get_context()
    if changes:
        base = base.replace(**changes)
    return base.activate()


# ---------------------------------------------------------------------------
# Result records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SteepnessBlock:
    witness: Any          # TransMonomial naming the block's steepness class
    series: "Series"


@dataclass(frozen=True)
class SteepnessDecomposition:
    blocks: tuple[SteepnessBlock, ...]
    cutoff: Any = None    # Optional[TransMonomial]


@dataclass(frozen=True)
class Normalization:
    """f conjugated by log^n into h = x + c + δ."""

    depth: int
    conjugate: "Series"
    constant: Any
    remainder: "Series"


@dataclass(frozen=True)
class AbelResult:
    V: "Series"
    depth: int
    residual: "Series"
    norm_constant: Any = Fraction(0)
