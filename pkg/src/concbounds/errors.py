"""Exception types shared across the package."""


class ShapeError(ValueError):
    """A matrix, vector, or subsystem specification has inconsistent dimensions."""


class ValidationError(Exception):
    """A numerical validity check failed (non-Hermitian, non-positive, bad trace, ...)."""
