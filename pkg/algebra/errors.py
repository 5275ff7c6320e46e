#!filepath: algebra/errors.py


class CircuitLabError(Exception):
    """Base class for every error raised by the circuit lab packages."""


class ArityMismatch(CircuitLabError):
    """Raised when two polynomials (or a polynomial and a point) disagree on the number of variables."""

    def __init__(self, expected: int, got: int):
        super().__init__(f"Arity mismatch: expected {expected} variables, got {got}")
        self.expected = expected
        self.got = got


class PrecisionExhausted(CircuitLabError):
    """
    Raised when a truncated Laurent series is indistinguishable from zero at its
    current precision and is used as a divisor. The caller must raise the precision.
    """

    def __init__(self, message: str, node: int = None):
        super().__init__(message)
        self.node = node


class ScalarFormatError(CircuitLabError):
    """Raised when a scalar string does not match "p/q" or "p/q+r/s i"."""
