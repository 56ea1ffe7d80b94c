"""Argument checks and the package's exception types."""

import math


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class ConvergenceError(ArithmeticError):
    """A numerical scheme failed to reach its tolerance.

    Parameters
    ----------
    message : str
    residual : float
        Best residual (or error estimate) reached before giving up.
    """

    def __init__(self, message, residual=float("nan")):
        super().__init__(message)
        self.residual = residual


def check_positive(name, value):
    """Return ``value`` as float, raising DomainError unless finite and > 0."""
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a positive number, got {value!r}") from None
    if not math.isfinite(v) or v <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return v


def check_nonnegative(name, value):
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a number, got {value!r}") from None
    if math.isnan(v) or v < 0.0:
        raise DomainError(f"{name} must be non-negative, got {value!r}")
    return v
