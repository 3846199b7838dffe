"""Exception types shared across the library."""


class CoupledwgError(Exception):
    """Base class for all library-specific errors."""


class ValidationError(CoupledwgError):
    """A constructed state or matrix violates its defining invariants."""


class CapacityError(CoupledwgError):
    """Requested photon content does not fit into the truncated space."""


class NumericalError(CoupledwgError):
    """A numerical routine failed or produced out-of-tolerance output."""


class IntegrationError(NumericalError):
    """Master-equation integration drifted outside its quality gates."""


class TruncationError(NumericalError):
    """Propagator sums were cut off before reaching the requested accuracy.

    Carries an estimate of the neglected tail so the caller can decide
    whether to enlarge the cutoff.
    """

    def __init__(self, message: str, tail_estimate: float):
        super().__init__(message)
        self.tail_estimate = tail_estimate


class ToleranceExceeded(CoupledwgError):
    """A closed-form vs. brute-force comparison exceeded its tolerance."""
