"""Exception hierarchy shared by all modules."""

from __future__ import annotations

from typing import Any


class FibZetaError(Exception):
    """Base class for every error raised by the package."""


class DomainError(FibZetaError, ValueError):
    """Argument outside the domain of the operation."""


class PoleError(DomainError):
    """Argument sits on a pole (integer for cot, non-positive integer for psi)."""


class UsageError(FibZetaError, ValueError):
    """Caller violated a structural precondition (parity, constraint, unknown id)."""


class PrecisionError(FibZetaError, ArithmeticError):
    """An expansion could not reach the requested accuracy."""


class TruncationError(FibZetaError, ArithmeticError):
    """Series summation hit its term budget before the tail bound met tolerance.

    The best partial result is kept on ``partial``.
    """

    def __init__(self, message: str, partial: Any = None) -> None:
        super().__init__(message)
        self.partial = partial
