#!filepath: family/formula.py
"""
Size bookkeeping for the first-order formula describing the elimination
instance: the G_i circuits, the K circuits H(T, U, xi_j) and the H circuit.
"""
import logging
from typing import Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from algebra.scalar import Scalar

from .builders import build_G, build_H, build_H_at
from .identification import identification_points

logger = logging.getLogger(__name__)

FIT_RANGE = (2, 3, 4)
CHECK_RANGE = (5, 6, 7, 8)


class FormulaReport(BaseModel):
    """
    Pydantic model for the constituent circuits of the formula at one n.
    """
    n: int
    point_count: int
    constituents: int = Field(..., description="n + K + 1 circuits")
    g_size: int = Field(..., description="Total node count of the G_i circuits")
    xi_size: int = Field(..., description="Total node count of the H(T, U, xi_j) circuits")
    h_size: int
    total_size: int


def build_formula(n: int, seed: int = 0, xi: Optional[Sequence[Sequence[Scalar]]] = None) -> FormulaReport:
    xi = xi if xi is not None else identification_points(n, seed)
    g_size = sum(build_G(n, i).size for i in range(1, n + 1))
    xi_size = sum(build_H_at(n, p).size for p in xi)
    h_size = build_H(n).size
    return FormulaReport(n=n, point_count=len(xi), constituents=n + len(xi) + 1, g_size=g_size,
                         xi_size=xi_size, h_size=h_size, total_size=g_size + xi_size + h_size)


class GrowthReport(BaseModel):
    """
    Cubic growth check: c is fitted as max size(n)/n^3 over the fit range and
    size(n) <= c * n^3 is checked over the check range.
    """
    c: float
    sizes: Dict[int, int]
    fit_range: List[int]
    check_range: List[int]
    passed: bool


def formula_growth(seed: int = 0, fit_range: Sequence[int] = FIT_RANGE,
                   check_range: Sequence[int] = CHECK_RANGE) -> GrowthReport:
    sizes = {n: build_formula(n, seed).total_size for n in list(fit_range) + list(check_range)}
    c = max(sizes[n] / n ** 3 for n in fit_range)
    passed = all(sizes[n] <= c * n ** 3 for n in check_range)
    if not passed:
        logger.warning(f"Formula size outgrows {c:.2f} * n^3: {sizes}")
    return GrowthReport(c=c, sizes=sizes, fit_range=list(fit_range), check_range=list(check_range), passed=passed)


class UniversalSize(BaseModel):
    """
    Pydantic model for the universal family with L auxiliary inputs: the point
    count and the parameter dimension of the Xi map.
    """
    L: int
    n: int
    point_count: int
    params: int


def universal_size(L: int, n: int) -> UniversalSize:
    if L < 0 or n < 1:
        raise ValueError(f"Expected L >= 0 and n >= 1, got L={L}, n={n}")
    m = L + n + 1
    return UniversalSize(L=L, n=n, point_count=4 * m * m + 2, params=m * m)