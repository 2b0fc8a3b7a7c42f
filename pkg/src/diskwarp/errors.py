"""Exception types shared across the package."""

__all__ = [
    "DiskwarpError",
    "NotConformalError",
    "NoConvergenceError",
    "SingularInertiaError",
    "BranchFailureError",
    "ConfigParseError",
    "ConfigValidationError",
]


class DiskwarpError(Exception):
    """Base class for all package-specific failures."""


class NotConformalError(DiskwarpError):
    """An accepted step's derivative modulus fell below the conformality
    threshold on the sample grid: the path left the space of conformal maps.

    Carries the offending result on the ``result`` attribute when available.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NoConvergenceError(DiskwarpError):
    """The minimizer hit its iteration budget with the gradient above
    tolerance.  Carries the partial result on the ``result`` attribute.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class SingularInertiaError(DiskwarpError):
    """The reduced linear dynamics hit a vanishing inertia factor 2c + alpha."""


class BranchFailureError(DiskwarpError):
    """No continuous root branch connects the requested endpoints."""


class ConfigParseError(DiskwarpError):
    """An experiment config file could not be parsed."""


class ConfigValidationError(DiskwarpError):
    """An experiment config parsed but violates an invariant."""
