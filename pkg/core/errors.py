"""Error hierarchy for the Leslie dynamics library.

Domain exit is not an error: it is returned as a ``DomainExit`` value.
"""
from typing import Any, Optional


class LeslieError(Exception):
    """Base class for every failure raised by the library."""


class InvalidParameters(LeslieError, ValueError):
    """A precondition on counts or parameters does not hold."""


class HypothesisViolation(LeslieError):
    """The parameters fall outside the hypotheses of an invariance statement."""


class DegenerateConjugacy(LeslieError):
    """The affine conjugacy collapses to a constant map (a = 3)."""


class NoPreimage(LeslieError):
    """The prey fixed point has no preimage inside the prey interval."""


class NotAFixedPoint(LeslieError):
    """The requested fixed point does not exist for these parameters."""


class InsufficientData(LeslieError):
    """A trajectory is too short for the requested analysis."""


class OrbitEscaped(LeslieError):
    """The orbit left the phase domain before enough steps were averaged."""

    def __init__(self, message: str, estimate: Optional[Any] = None):
        super().__init__(message)
        self.estimate = estimate
