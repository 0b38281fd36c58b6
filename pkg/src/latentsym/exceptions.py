from typing import Optional, Sequence


class LatentSymError(Exception):
    """Base class for all latentsym errors."""


class InputError(LatentSymError, ValueError):
    """An operation was called outside its contract."""


class NumericError(LatentSymError, ArithmeticError):
    """A numerical kernel failed to converge or overflowed."""

    def __init__(
        self,
        message: str,
        residuals: Optional[Sequence[float]] = None,
        last_finite_t: Optional[float] = None,
    ):
        super().__init__(message)
        self.residuals = list(residuals) if residuals is not None else None
        self.last_finite_t = last_finite_t


class ConfigError(LatentSymError, ValueError):
    """A run configuration is malformed or inconsistent."""

    def __init__(self, message: str, field: Optional[str] = None):
        if field:
            message = f"{field}: {message}"
        super().__init__(message)
        self.field = field
