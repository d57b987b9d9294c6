"""Exception hierarchy shared by all modules."""


class DualityError(Exception):
    """Base class for every error raised by the package."""


class DomainError(DualityError, ValueError):
    """Argument outside the domain of a function (poles, non-positive x, ...)."""


class ConvergenceError(DualityError, RuntimeError):
    """Iterative or adaptive procedure failed to meet its tolerance.

    The best available estimate and its error are attached so callers may
    decide to accept a degraded result.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class InfiniteEnergyError(DualityError):
    """Requested integral is divergent for this trajectory (uniform acceleration)."""


class UnsupportedError(DualityError, NotImplementedError):
    """Operation not defined for the requested trajectory variant."""


class FitError(DualityError):
    """Spectral fit could not be performed or did not converge."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class InfiniteSpectrumError(InfiniteEnergyError):
    """Angle-integrated spectrum ``I(omega)`` diverges (uniform acceleration)."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
