#!filepath: lowerbound/certificate.py
"""
Rank certificate for the first-order T-jets of the eliminant coefficients.

For points u_1..u_{2^n} the matrix N with rows (L_1(u_l), ..., L_{2^n}(u_l))
has rank 2^n exactly when the jets are linearly independent on those points.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy
from pydantic import BaseModel, ConfigDict, Field

from algebra.linalg import exact_rank
from algebra.scalar import Scalar, format_scalar, to_scalar
from family.config import FamilySettings
from family.eliminant import F_coeff_T_jet
from family.errors import CeilingExceeded
from semantics.config import SemanticsSettings
from semantics.sampling import RANK_STREAM, SplitRandom

from .config import LowerBoundSettings
from .errors import JetInconsistency, RankDeficiencyError

logger = logging.getLogger(__name__)

STRATEGIES = ("primes", "random")
RANDOM_DENOMINATOR = 97


class RankCertificate(BaseModel):
    """
    Pydantic model for `circ lb rank-cert --json`.
    """
    model_config = ConfigDict(populate_by_name=True)

    n: int
    strategy: str
    seed: int = 0
    attempts: int = Field(1, description="Point sets tried, including the accepted one")
    points: List[List[str]]
    matrix: List[List[str]] = Field(..., description="N[l][k] = L_k(u_l)")
    lam: List[str] = Field(..., description="Jet values at T=0, shared by every point")
    rank: int
    passed: bool = Field(..., alias="pass")

    def to_json_dict(self) -> dict:
        return self.model_dump(by_alias=True)


def prime_points(n: int, attempt: int = 0) -> List[Tuple[Fraction, ...]]:
    """
    Point l takes coordinate i from one of two primes reserved for i,
    selected by bit i of l. Distinct primes make the monomial matrix a tensor
    product of invertible 2x2 blocks.
    """
    offset = 2 * n * attempt
    pairs = [(sympy.prime(offset + 2 * i + 1), sympy.prime(offset + 2 * i + 2)) for i in range(n)]
    return [tuple(Fraction(pairs[i][(l >> i) & 1]) for i in range(n)) for l in range(2 ** n)]


def random_points(n: int, seed: int, attempt: int = 0) -> List[Tuple[Fraction, ...]]:
    rng = SplitRandom(seed).child(RANK_STREAM, attempt).rng()
    bound = SemanticsSettings().sample_bound
    return [tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, RANDOM_DENOMINATOR)) for _ in range(n))
            for _ in range(2 ** n)]


def _points_for(strategy: str, n: int, seed: int, attempt: int) -> List[Tuple[Fraction, ...]]:
    if strategy == "primes":
        return prime_points(n, attempt)
    return random_points(n, seed, attempt)


def jet_matrix(n: int, points: Sequence[Sequence[Scalar]],
               family_settings: Optional[FamilySettings] = None) -> Tuple[Tuple[Scalar, ...], List[List[Scalar]]]:
    """
    Rows L(u_l) for every point, computed in parallel.

    Raises:
        JetInconsistency: lambda differs between two points.
    """
    family_settings = family_settings or FamilySettings()

    def jet(p):
        return F_coeff_T_jet(n, p, family_settings)

    with ThreadPoolExecutor(max_workers=SemanticsSettings().workers) as executor:
        jets = list(executor.map(jet, points))
    lam = jets[0][0]
    for index, (other, _) in enumerate(jets[1:], start=1):
        if other != lam:
            raise JetInconsistency(n, 0, index)
    return lam, [list(row) for _, row in jets]


def rank_certificate(n: int, strategy: str = "primes", seed: int = 0,
                     points: Optional[Sequence[Sequence[Scalar]]] = None,
                     settings: Optional[LowerBoundSettings] = None) -> RankCertificate:
    """
    Builds N and certifies rank 2^n exactly.

    Explicit `points` are tried first; on a rank deficiency fresh points are
    drawn from `strategy` until the retry budget runs out.

    Raises:
        CeilingExceeded: n above the configured ceiling.
        RankDeficiencyError: no point set reached full rank.
    """
    settings = settings or LowerBoundSettings()
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown point strategy '{strategy}', expected one of {STRATEGIES}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > settings.ceiling_n:
        raise CeilingExceeded(n, settings.ceiling_n, "rank certificate")
    family_settings = FamilySettings()
    family_settings.jet_ceiling = max(family_settings.jet_ceiling, settings.ceiling_n)

    size = 2 ** n
    rank = 0
    current: List[Tuple[Scalar, ...]] = []
    attempts = settings.rank_retries + 1
    for attempt in range(attempts):
        if attempt == 0 and points is not None:
            current = [tuple(to_scalar(v) for v in p) for p in points]
            if len(current) != size or any(len(p) != n for p in current):
                raise ValueError(f"Expected {size} points with {n} coordinates each")
        else:
            current = _points_for(strategy, n, seed, attempt - (points is not None))
        lam, matrix = jet_matrix(n, current, family_settings)
        rank = exact_rank(matrix)
        if rank == size:
            logger.info(f"Rank certificate for n={n}: rank {rank} after {attempt + 1} attempt(s)")
            return RankCertificate(n=n, strategy=strategy, seed=seed, attempts=attempt + 1,
                                   points=[[format_scalar(v) for v in p] for p in current],
                                   matrix=[[format_scalar(v) for v in row] for row in matrix],
                                   lam=[format_scalar(v) for v in lam], rank=rank, passed=True)
        logger.warning(f"Jet matrix for n={n} has rank {rank} < {size} on attempt {attempt}, drawing new points")
    raise RankDeficiencyError(n, rank, current, attempts)
