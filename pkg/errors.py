"""Kernel errors — one class per diagnostic, grouped by exit-code category."""

from __future__ import annotations

from typing import Optional

# Exit codes used by the front ends
EXIT_OK = 0
EXIT_USER = 2
EXIT_BUDGET = 3


class TransseriesError(Exception):
    """Base class; ``code`` is the stable diagnostic name shown to users."""

    code = "TransseriesError"
    exit_code = EXIT_USER

    def __init__(self, message: str = "", *, position: Optional[int] = None) -> None:
        self.message = message or self.code
        self.position = position
        super().__init__(self.message)

    def diagnostic(self) -> str:
        return f"error[{self.code}]: {self.message}"


# ---------------------------------------------------------------------------
# User errors (exit 2)
# ---------------------------------------------------------------------------

class UserError(TransseriesError):
    exit_code = EXIT_USER


class NonPositiveArgument(UserError):
    code = "NonPositiveArgument"


class ZeroDivision(UserError):
    code = "ZeroDivision"


class NotPositiveInfinite(UserError):
    code = "NotPositiveInfinite"


class NotTaylorConfigured(UserError):
    code = "NotTaylorConfigured"


class NotSteepResidual(UserError):
    code = "NotSteepResidual"


class NotConjugate(UserError):
    code = "NotConjugate"


class PreconditionError(UserError):
    code = "PreconditionError"


class ParseError(UserError):
    code = "SyntaxError"


class UnknownFunction(UserError):
    code = "UnknownFunction"


# ---------------------------------------------------------------------------
# Budget / precision errors (exit 3)
# ---------------------------------------------------------------------------

class BudgetError(TransseriesError):
    exit_code = EXIT_BUDGET


class ExactnessUnavailable(BudgetError):
    code = "ExactnessUnavailable"


class PrecisionExhausted(BudgetError):
    code = "PrecisionExhausted"


class DepthBudgetExceeded(BudgetError):
    code = "DepthBudgetExceeded"


class NonConvergent(BudgetError):
    code = "NonConvergent"


class NotContracting(BudgetError):
    code = "NotContracting"


class Resonance(BudgetError):
    code = "Resonance"


class ExponentialityNonzero(BudgetError):
    code = "ExponentialityNonzero"
