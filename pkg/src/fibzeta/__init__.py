"""Extended-precision polygamma, zeta and golden-ratio arithmetic for
checking Fibonacci/Lucas zeta-series identities."""

from fibzeta.errors import (
    DomainError,
    FibZetaError,
    PoleError,
    PrecisionError,
    TruncationError,
    UsageError,
)
from fibzeta.qsqrt5 import ALPHA, BETA, SQRT5, QS5, alpha_pow, fib, lucas

__version__ = "0.1.0"

__all__ = [
    "ALPHA",
    "BETA",
    "SQRT5",
    "QS5",
    "alpha_pow",
    "fib",
    "lucas",
    "DomainError",
    "FibZetaError",
    "PoleError",
    "PrecisionError",
    "TruncationError",
    "UsageError",
    "__version__",
]
