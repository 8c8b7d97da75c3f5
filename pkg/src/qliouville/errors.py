"""Exception types shared across the toolkit.

Every guard names the hypothesis it protects, so a failing run says which
assumption of the formalism was violated rather than where numpy choked.
"""


class ToolkitError(ValueError):
    """Base class for all toolkit-specific errors."""


class DimensionMismatchError(ToolkitError):
    """Operands have incompatible dimensions."""


class NotHermitianError(ToolkitError):
    """Matrix is not Hermitian within tolerance."""


class NotSymmetricError(ToolkitError):
    """Candidate metric is not symmetric within tolerance."""


class NotRealEntriesError(ToolkitError):
    """Candidate metric has non-real entries (conjugation commutant test)."""


class NotPositiveDefiniteError(ToolkitError):
    """Matrix is indefinite or numerically singular."""


class NotQuasiHermitianError(ToolkitError):
    """Hamiltonian fails the metric intertwining relation within tolerance."""


class IllConditionedMetricError(ToolkitError):
    """Metric condition number exceeds the trust limit."""


class BiorthogonalityError(ToolkitError):
    """Left/right eigenvector families fail pairing checks.

    Carries the offending index pairs in ``pairs``.
    """

    def __init__(self, message, pairs=()):
        super().__init__(message)
        self.pairs = list(pairs)


class NonRealRegimeError(ToolkitError):
    """Anharmonic couplings outside the real-spectrum regime."""


class EtaPoleError(ToolkitError):
    """Metric exponent has a pole for these couplings."""
