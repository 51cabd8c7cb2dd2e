"""Exception hierarchy.

Every error carries a ``category`` used by the command line front end to pick
an exit code: ``validation`` (1), ``physics`` (2) or ``verification`` (3).
"""


class HybridAmpError(Exception):
    category = "physics"


class ValidationError(HybridAmpError, ValueError):
    """A parameter or configuration value violates its invariant."""

    category = "validation"


class UnsupportedConfigurationError(HybridAmpError):
    """The requested configuration is outside what the model covers (e.g. theta != 0)."""

    category = "validation"


class PreconditionError(HybridAmpError, ValueError):
    category = "validation"


class NoSteadyStateError(HybridAmpError):
    pass


class SingularOperatingPointError(HybridAmpError):
    pass


class StaleRootError(HybridAmpError):
    pass


class LinearizationInvalidError(HybridAmpError):
    pass


class UnstableSystemError(HybridAmpError):
    def __init__(self, message, eigenvalues=None):
        super().__init__(message)
        self.eigenvalues = eigenvalues


class MultistableError(HybridAmpError):
    pass


class ResonanceSingularityError(HybridAmpError):
    pass


class GridTooNarrowError(HybridAmpError):
    pass


class NoTransductionError(HybridAmpError):
    def __init__(self, message, phi_h=None):
        super().__init__(message)
        self.phi_h = phi_h


class InconsistentSpectraError(HybridAmpError):
    pass


class OracleError(HybridAmpError):
    """Time-domain verification could not produce a trustworthy estimate."""


class VerificationFailure(HybridAmpError):
    category = "verification"


class LinearizationWarning(UserWarning):
    pass
