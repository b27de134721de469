"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain where an operation is defined.

    ``bound`` names the violated condition when the failure is a
    precondition of a stated estimate (e.g. ``"n >= 2*T**2"``).
    """

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class CapacityError(ValueError):
    """Requested order exceeds the configured maximum."""


class IntegrationError(ArithmeticError):
    """A quadrature integrand produced non-finite values."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class ConfigError(ValueError):
    """An experiment configuration is malformed or selects nothing to run."""
