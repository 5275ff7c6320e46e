#!filepath: family/identification.py
"""
Identification points: K = 16n^2 + 2 integer points xi_1..xi_K in [0, 2^(4n))^n
such that Xi(t, u) = (H(t, u, xi_1), ..., H(t, u, xi_K)) separates different
polynomials H(t, u, X).
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from algebra.linalg import exact_rank
from algebra.scalar import Scalar, to_scalar
from circuit_ir.domain import Image
from semantics.config import SemanticsSettings
from semantics.sampling import IDENTIFICATION_STREAM, SplitRandom, random_integers

from .builders import h_at_point, h_value, multilinear_monomial
from .config import FamilySettings
from .errors import IdentificationFailure

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, ...]


def point_count(n: int) -> int:
    return 16 * n * n + 2


def coordinate_bits(n: int) -> int:
    return 4 * n


def identification_points(n: int, seed: int = 0, attempt: int = 0) -> List[Point]:
    """Seeded sample of K points with coordinates in [0, 2^(4n)); `attempt` selects a fresh stream."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    rng = SplitRandom(seed).child(IDENTIFICATION_STREAM, attempt).rng()
    upper = (1 << coordinate_bits(n)) - 1
    return [tuple(Fraction(rng.randint(0, upper)) for _ in range(n)) for _ in range(point_count(n))]


def Xi(n: int, xi: Sequence[Sequence[Scalar]], t: Scalar, u: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    """(H(t, u, xi_1), ..., H(t, u, xi_K))."""
    if len(u) != n:
        raise ValueError(f"Expected {n} U coordinates, got {len(u)}")
    return tuple(h_value(t, u, p) for p in xi)


def theta(n: int, t: Scalar, u: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    """
    Coefficients of H(t, u, X) on the multilinear monomials X^S, indexed by the
    bitmask of S. Two (t, u) give the same polynomial iff their vectors agree.
    """
    t = to_scalar(t)
    shifted = [to_scalar(v) - 1 for v in u]
    out = []
    for mask in range(2 ** n):
        value = t * multilinear_monomial(shifted, mask)
        if mask and mask & (mask - 1) == 0:
            value = value + mask
        out.append(value)
    return tuple(out)


def span_matrix(n: int, xi: Sequence[Sequence[Scalar]]) -> List[List[Scalar]]:
    """Rows are the points, columns the multilinear monomials evaluated there."""
    return [[multilinear_monomial(p, mask) for mask in range(2 ** n)] for p in xi]


class IdentificationReport(BaseModel):
    """
    Pydantic model for the identification check of one point set.
    """
    n: int
    seed: int
    attempt: int = 0
    point_count: int
    bits_ok: bool = Field(..., description="Every coordinate lies in [0, 2^(4n))")
    trials: int
    skipped: int = Field(0, description="Trials whose two polynomials coincided and say nothing")
    collisions: int = Field(..., description="Different polynomials with equal Xi vectors")
    span_rank: Optional[int] = Field(None, description="Rank of the multilinear evaluation matrix")
    span_certified: bool = Field(False, description="Xi is injective on all multilinear polynomials")
    passed: bool


def verify_identification(n: int, xi: Sequence[Sequence[Scalar]], trials: Optional[int] = None, seed: int = 0,
                          attempt: int = 0, settings: Optional[FamilySettings] = None) -> IdentificationReport:
    """
    Probabilistic separation check over random pairs (t, u), (t', u'), plus an
    exact certificate when the span matrix has full column rank (computed up to
    the jet ceiling, where 2^n columns stay tractable).
    """
    settings = settings or FamilySettings()
    sem = SemanticsSettings()
    trials = trials if trials is not None else sem.consistency_trials
    upper = 1 << coordinate_bits(n)
    bits_ok = len(xi) == point_count(n) and all(
        len(p) == n and all(0 <= to_scalar(v) < upper and to_scalar(v).denominator == 1 for v in p) for p in xi)

    split = SplitRandom(seed).child(IDENTIFICATION_STREAM, attempt, 1)
    bound = sem.sample_bound

    def trial(index: int) -> Optional[bool]:
        rng = split.child(index).rng()
        t1, t2 = random_integers(rng, 2, bound)
        u1, u2 = random_integers(rng, n, bound), random_integers(rng, n, bound)
        if theta(n, t1, u1) == theta(n, t2, u2):
            return None
        return Xi(n, xi, t1, u1) == Xi(n, xi, t2, u2)

    with ThreadPoolExecutor(max_workers=sem.workers) as executor:
        outcomes = list(executor.map(trial, range(trials)))
    skipped = sum(1 for o in outcomes if o is None)
    collisions = sum(1 for o in outcomes if o)

    span_rank = None
    certified = False
    if n <= settings.jet_ceiling and len(xi) >= 2 ** n:
        span_rank = exact_rank(span_matrix(n, xi))
        certified = span_rank == 2 ** n
    passed = bits_ok and collisions == 0 and (span_rank is None or certified)
    report = IdentificationReport(n=n, seed=seed, attempt=attempt, point_count=len(xi), bits_ok=bits_ok,
                                  trials=trials, skipped=skipped, collisions=collisions, span_rank=span_rank,
                                  span_certified=certified, passed=passed)
    logger.debug(f"Identification check: {report.model_dump()}")
    return report


def find_identification_points(n: int, seed: int = 0, trials: Optional[int] = None,
                               settings: Optional[FamilySettings] = None) -> Tuple[List[Point], IdentificationReport]:
    """
    Samples point sets until one passes verify_identification.

    Raises:
        IdentificationFailure: every attempt within the retry budget failed.
    """
    settings = settings or FamilySettings()
    report = None
    for attempt in range(settings.identification_retries + 1):
        points = identification_points(n, seed, attempt)
        report = verify_identification(n, points, trials, seed, attempt, settings)
        if report.passed:
            return points, report
        logger.warning(f"Identification attempt {attempt} for n={n} failed, resampling")
    raise IdentificationFailure(n, settings.identification_retries + 1, report)


def xi_domain(n: int, xi: Sequence[Sequence[Scalar]]) -> Image:
    """The image of (T, U) under Xi as a parameter domain."""
    return Image(n + 1, [h_at_point(n, p) for p in xi])
