"""Exception hierarchy.

The CLI maps these onto exit codes: malformed input -> 1, invariant
violation -> 2, certification / dilation-search failure -> 3.
"""


class CpmetricError(Exception):
    """Base class for all library errors."""


class MalformedInputError(CpmetricError):
    """Input document or argument that cannot be parsed at all."""


class InvariantViolation(CpmetricError):
    """A domain invariant failed on construction or load."""


class DimensionMismatch(InvariantViolation):
    """Operands with incompatible dimensions."""


class CertificationError(CpmetricError):
    """An optimizer finished without certifying its result to tolerance."""

    def __init__(self, message, gap=None):
        super().__init__(message)
        self.gap = gap


class DilationSearchError(CertificationError):
    """The unitary-phase search for a constrained dilation failed.

    Existence of a solution is guaranteed, so this always signals an
    optimizer deficiency.  Carries the best achieved lower spectral bound.
    """

    def __init__(self, message, best_lambda_min=None):
        super().__init__(message, gap=None)
        self.best_lambda_min = best_lambda_min
