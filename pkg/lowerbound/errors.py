#!filepath: lowerbound/errors.py
from typing import List, Sequence

from algebra.errors import CircuitLabError
from algebra.scalar import format_scalar


class LowerBoundError(CircuitLabError):
    """Base class for certificate and audit errors."""


class RankDeficiencyError(LowerBoundError):
    """
    The jet matrix stayed rank deficient for every point set tried. This would
    contradict the linear independence of the jets, so the last point set is
    kept for inspection.
    """

    def __init__(self, n: int, rank: int, points: Sequence[Sequence], attempts: int):
        super().__init__(f"Jet matrix for n={n} has rank {rank} < {2 ** n} after {attempts} attempts")
        self.n = n
        self.rank = rank
        self.attempts = attempts
        self.points: List[List[str]] = [[format_scalar(v) for v in p] for p in points]


class JetInconsistency(LowerBoundError):
    """The T-free jet part differed between two points."""

    def __init__(self, n: int, first: int, second: int):
        super().__init__(f"lambda differs between certificate points {first} and {second} for n={n}")
        self.n = n
        self.first = first
        self.second = second
