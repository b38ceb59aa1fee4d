"""Exception hierarchy shared by all modules."""


class HybridPlaneError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HybridPlaneError):
    """Input outside the mathematical domain of an operation."""


class BranchFlagError(DomainError):
    """Real energy on a branch cut evaluated without the limiting-absorption flag."""


class ValidationError(HybridPlaneError):
    """A coupling or configuration object violates its structural constraints."""


class SingularCouplingError(ValidationError):
    """Coupling matrix A is numerically singular; carries the condition number."""

    def __init__(self, message, condition_number=None):
        super().__init__(message)
        self.condition_number = condition_number


class SpectralPointError(HybridPlaneError):
    """The Krein denominator is numerically singular at this energy.

    This is how eigenvalues of the coupled operator announce themselves;
    the determinant of the offending matrix is attached.
    """

    def __init__(self, message, determinant=None, condition_number=None):
        super().__init__(message)
        self.determinant = determinant
        self.condition_number = condition_number


class RegionError(HybridPlaneError):
    """An energy probed outside the region where the operation is defined
    (e.g. a nominally real kernel value acquired an imaginary part)."""


class DesignError(HybridPlaneError):
    """Inverse-design request is degenerate for the given parameters."""


class ExtrapolationError(HybridPlaneError):
    """Richardson extrapolation failed to settle; carries the residual spread."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class PoleOnAxisError(HybridPlaneError):
    """Scattering denominator vanishes at a real energy (parameter degeneracy)."""


class ConfigError(HybridPlaneError):
    """Invalid run configuration; carries a machine-readable error code."""

    def __init__(self, code, message):
        super().__init__(message)
        self.code = code
