"""
Exception hierarchy for dynirr.

User-input problems are reported through ValidationResult; the exceptions here
signal faults in exact computations or contradictions of proven statements.
"""

from typing import Any, Optional


class DynirrError(Exception):
    """Base class for all dynirr errors."""


class VariableMismatchError(DynirrError):
    """Operands carry different variable tags."""


class ZeroPolynomialError(DynirrError):
    """An operation received the zero polynomial where it is not allowed."""


class ConstantPolynomialError(DynirrError):
    """An operation needs a nonconstant polynomial."""


class InexactDivisionError(DynirrError):
    """A division expected to be exact left a remainder (a construction bug upstream)."""


class NotPrimeError(DynirrError):
    """A modulus that must be prime is not."""


class ModulusMismatchError(DynirrError):
    """Operands live over different prime fields."""


class NonMonicError(DynirrError):
    """The generalized Eisenstein criterion received a non-monic polynomial."""


class BudgetExceededError(DynirrError):
    """A construction would exceed the configured degree budget."""

    def __init__(self, what: str, degree: int, cap: int):
        self.what = what
        self.degree = degree
        self.cap = cap
        super().__init__(f"{what}: degree {degree} exceeds budget {cap}")


class HypothesisFailure(DynirrError):
    """A hypothesis that is proven to hold failed at this instance."""


class SpecError(DynirrError):
    """A job specification is malformed."""


class PolynomialParseError(DynirrError):
    """A serialized polynomial or certificate could not be decoded."""

    def __init__(self, message: str, offset: Optional[int] = None, token: Any = None):
        self.offset = offset
        self.token = token
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


class PoleError(DynirrError):
    """Exact iteration of a rational map hit a pole."""
