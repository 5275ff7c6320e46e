#!filepath: family/errors.py
from algebra.errors import CircuitLabError


class FamilyError(CircuitLabError):
    """Base class for elimination family errors."""


class CeilingExceeded(FamilyError):
    """n is above the configured ceiling for an exponential-size computation."""

    def __init__(self, n: int, ceiling: int, what: str):
        super().__init__(f"n={n} exceeds the {what} ceiling of {ceiling}")
        self.n = n
        self.ceiling = ceiling


class IdentificationFailure(FamilyError):
    """No sampled point set passed identification checks within the retry budget."""

    def __init__(self, n: int, attempts: int, report=None):
        super().__init__(f"No identification point set for n={n} passed after {attempts} attempts")
        self.n = n
        self.attempts = attempts
        self.report = report
