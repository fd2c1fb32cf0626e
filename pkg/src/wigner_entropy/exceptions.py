"""Exception types shared across the package."""


class NonConvergentError(RuntimeError):
    """Raised when quadrature fails its node-halving self check.

    Carries the best available value and the measured error estimate so
    callers can inspect the failed integral.
    """

    def __init__(self, message, value=None, error_estimate=None, tolerance=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate
        self.tolerance = tolerance


class NotNormalizedError(ValueError):
    """Raised when a packet that must be normalized is not, beyond tolerance."""
