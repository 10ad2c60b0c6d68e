"""Typed errors raised throughout the library.

Every failure mode that can reach a caller has a dedicated class so that
harness rows and CLI output can name the failure instead of propagating
NaNs or bare exceptions.
"""


class ConvexLabError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(ConvexLabError):
    """A precondition on an argument was violated."""


class DimensionMismatchError(InvalidArgumentError):
    """Two bodies or a body and a quadrature disagree on the ambient dimension."""


class OriginNotInteriorError(ConvexLabError):
    """The origin is not strictly inside the body (support <= 0 somewhere)."""


class DegeneracyError(ConvexLabError):
    """A point set is affinely dependent / a hull or ellipsoid is degenerate."""


class UnsupportedRepresentationError(ConvexLabError):
    """The operation needs data the body representation does not carry."""


class NumericDomainError(ConvexLabError):
    """A numeric evaluation produced a non-finite value."""


class ConvergenceError(ConvexLabError):
    """An iterative algorithm hit its iteration cap before reaching tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
