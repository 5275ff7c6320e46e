#!filepath: algebra/linalg.py
import logging
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence

import numpy as np

from .config import AlgebraSettings
from .scalar import GaussianRational, Scalar, to_scalar

logger = logging.getLogger(__name__)

Matrix = Sequence[Sequence[Scalar]]


def exact_rank(matrix: Matrix, primes: Optional[Sequence[int]] = None) -> int:
    """
    Rank of a rectangular matrix over Q (or Q(i)), computed exactly.

    Rational matrices are scaled to integer rows; a full rank modulo one of the
    configured primes settles the answer immediately (a nonzero minor mod p is
    nonzero over Q), otherwise fraction-free Bareiss elimination decides.
    Gaussian rational matrices use pivoted elimination over Q(i).

    Args:
        matrix: rows of exact scalars (int, Fraction, GaussianRational or wire strings).
        primes: overrides the primes of the modular shortcut; an empty list disables it.

    Returns:
        The rank, deterministic for a given matrix.
    """
    rows = [[to_scalar(v) for v in row] for row in matrix]
    if not rows or not rows[0]:
        return 0
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("exact_rank expects a rectangular matrix")
    if any(isinstance(v, GaussianRational) for row in rows for v in row):
        return _field_rank(rows)

    integer_rows = [_clear_denominators(row) for row in rows]
    full = min(len(integer_rows), width)
    if primes is None:
        primes = AlgebraSettings().modular_primes
    for p in primes:
        modular = rank_mod_p(integer_rows, p)
        if modular == full:
            logger.debug(f"Rank {full} certified modulo {p}")
            return full
    rank = _bareiss_rank(integer_rows)
    logger.debug(f"Bareiss rank {rank} for a {len(integer_rows)}x{width} matrix")
    return rank


def _clear_denominators(row: Sequence[Fraction]) -> List[int]:
    scale = 1
    for value in row:
        scale = lcm(scale, Fraction(value).denominator)
    return [int(Fraction(value) * scale) for value in row]


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank of an integer matrix over GF(p); never exceeds the rank over Q."""
    work = [[v % p for v in row] for row in rows]
    height = len(work)
    width = len(work[0]) if work else 0
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, height) if work[r][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inverse = pow(work[rank][col], -1, p)
        pivot_row = [(v * inverse) % p for v in work[rank]]
        work[rank] = pivot_row
        for r in range(rank + 1, height):
            factor = work[r][col]
            if factor:
                work[r] = [(a - factor * b) % p for a, b in zip(work[r], pivot_row)]
        rank += 1
        if rank == height:
            break
    return rank


def _bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free echelon elimination; every division is exact."""
    work = [list(row) for row in rows]
    height = len(work)
    width = len(work[0])
    rank = 0
    previous = 1
    for col in range(width):
        pivot = next((r for r in range(rank, height) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        lead = work[rank][col]
        for r in range(rank + 1, height):
            below = work[r][col]
            work[r] = [(lead * work[r][c] - below * work[rank][c]) // previous if c > col else 0
                       for c in range(width)]
        previous = lead
        rank += 1
        if rank == height:
            break
    return rank


def _field_rank(rows: List[List[Scalar]]) -> int:
    work = [list(row) for row in rows]
    height = len(work)
    width = len(work[0])
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, height) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        lead = work[rank][col]
        for r in range(rank + 1, height):
            factor = work[r][col] / lead
            if factor != 0:
                work[r] = [a - factor * b for a, b in zip(work[r], work[rank])]
        rank += 1
        if rank == height:
            break
    return rank


def exact_matmul(a: Matrix, b: Matrix) -> List[List[Scalar]]:
    """Exact matrix product through numpy object arrays."""
    left = np.array([[to_scalar(v) for v in row] for row in a], dtype=object)
    right = np.array([[to_scalar(v) for v in row] for row in b], dtype=object)
    if left.shape[1] != right.shape[0]:
        raise ValueError(f"Cannot multiply {left.shape} by {right.shape}")
    return [[to_scalar(v) for v in row] for row in left.dot(right)]


def transpose(matrix: Matrix) -> List[List[Scalar]]:
    return [list(column) for column in zip(*matrix)]
