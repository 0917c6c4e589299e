"""Exception types shared across the library.

Everything raised on purpose derives from LazyPruneError so callers (and
the CLI) can distinguish library failures from genuine bugs.
"""


class LazyPruneError(Exception):
    """Base class for all lazyprune errors."""


class ShapeError(LazyPruneError, ValueError):
    """Dimension mismatch or out-of-bounds slice."""


class SymmetryError(ShapeError):
    """Matrix required to be symmetric is not."""


class SingularMatrixError(LazyPruneError, ArithmeticError):
    """Factorization or exact inversion hit a non-positive / zero pivot."""

    def __init__(self, message, pivot_index=None):
        super().__init__(message)
        self.pivot_index = pivot_index


class DegenerateDiagonalError(LazyPruneError, ArithmeticError):
    """Inverse-Hessian diagonal entry too small to divide by."""

    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


class DegenerateCalibrationError(LazyPruneError, ValueError):
    """Calibration data unusable (e.g. all-zero input with auto lambda)."""


class NonFiniteError(LazyPruneError, ValueError):
    """NaN or infinity where finite values are required."""


class ConfigError(LazyPruneError, ValueError):
    """Invalid pruning / benchmark configuration."""


class DomainError(LazyPruneError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class InsufficientDataError(LazyPruneError, ValueError):
    """Not enough data points for a fit."""


class FormatError(LazyPruneError, ValueError):
    """Malformed matrix or table file."""
