"""Exception types shared across the library."""

from __future__ import annotations


class FluxboundError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(FluxboundError, ValueError):
    """An input violates a structural invariant (shape, hermiticity,
    positivity, trace, unitarity, unknown option)."""


class DomainError(FluxboundError, ValueError):
    """A scalar or spectral function was evaluated outside its domain.

    Carries the offending value when one is available (for example the
    eigenvalue at which a matrix logarithm is undefined).
    """

    def __init__(self, message: str, offending_value: float | None = None):
        super().__init__(message)
        self.offending_value = offending_value


class DegenerateInputError(FluxboundError, ValueError):
    """The inputs are degenerate for the requested operation, for example
    two states that coincide within tolerance."""


class NumericError(FluxboundError, ArithmeticError):
    """A numerical routine failed to converge, or an identity that must
    hold to rounding accuracy was violated."""
