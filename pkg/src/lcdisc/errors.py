"""Exception types shared across the package."""

from __future__ import annotations


class LcdiscError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(LcdiscError, ValueError):
    """A physical or numerical parameter is out of its allowed range."""


class NumericFailureError(LcdiscError):
    """A quadrature did not reach the requested tolerance.

    Attributes
    ----------
    estimate : float
        The achieved error estimate, so callers can decide whether the
        partial result would still have been useful.
    """

    def __init__(self, message: str, estimate: float):
        super().__init__(f"{message} (error estimate {estimate:.3e})")
        self.estimate = estimate


class ResourceLimitError(LcdiscError):
    """A requested computation exceeds a configured resource cap."""


class InvalidStateError(LcdiscError):
    """An object is not in a state that supports the requested operation."""


class ConfigError(LcdiscError):
    """A configuration file or option set could not be interpreted."""
