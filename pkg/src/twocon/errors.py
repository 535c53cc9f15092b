"""Exception hierarchy shared across the package."""


class TwoconError(Exception):
    """Base class for all package-specific errors."""


class DomainError(TwoconError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class LimitError(TwoconError):
    """A hard size guard was exceeded (override flags exist where sensible)."""


class RetryExhaustedError(TwoconError):
    """Rejection sampling ran out of attempts.

    Carries the attempt/accept counts so the observed acceptance rate can
    still be inspected.
    """

    def __init__(self, attempts, accepts, message=None):
        self.attempts = attempts
        self.accepts = accepts
        super().__init__(
            message or f"rejection sampling exhausted {attempts} attempts "
            f"({accepts} accepted)"
        )
