#!filepath: semantics/errors.py
from algebra.errors import CircuitLabError


class SemanticsError(CircuitLabError):
    """Base class for evaluation errors."""


class DivisionByZero(SemanticsError):
    """
    A division node met an exact zero divisor at one evaluation point.
    This is a point failure, not evidence of inconsistency.
    """

    def __init__(self, node: int, trace=None):
        super().__init__(f"Division by zero at node {node}")
        self.node = node
        self.trace = trace


class DivisionByZeroFunction(SemanticsError):
    """A division node divides by the identically zero rational function (an inconsistency witness)."""

    def __init__(self, node: int):
        super().__init__(f"Node {node} divides by the identically zero function")
        self.node = node


class BudgetExceeded(SemanticsError):
    """Symbolic expansion produced more terms than allowed."""

    def __init__(self, node: int, terms: int, budget: int):
        super().__init__(f"Node {node} expands to {terms} terms, over the budget of {budget}")
        self.node = node
        self.terms = terms
        self.budget = budget


class FingerprintExhausted(SemanticsError):
    """Too many sample points failed to evaluate; fewer successes than the configured floor."""

    def __init__(self, successes: int, floor: int, attempts: int):
        super().__init__(f"Only {successes} of {attempts} sample points evaluated (floor is {floor})")
        self.successes = successes
        self.floor = floor
        self.attempts = attempts


class FingerprintMismatch(SemanticsError):
    """Two fingerprints were taken with different seeds, arities or domains, or share too few points."""
