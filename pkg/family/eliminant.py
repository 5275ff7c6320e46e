#!filepath: family/eliminant.py
"""
The eliminant F(T, U, Y) = prod_{eps in {0,1}^n} (Y - H(T, U, eps)) and its
first-order jet in T.

Univariate polynomials in Y are dense coefficient lists, lowest degree first.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from algebra.scalar import Scalar, to_scalar
from algebra.sparse_poly import SparsePoly, product
from semantics.evaluate import eval_point

from .builders import build_H, multilinear_monomial, roots
from .config import FamilySettings
from .errors import CeilingExceeded

logger = logging.getLogger(__name__)

Dense = List[Scalar]


def _dense_mul(a: Dense, b: Dense) -> Dense:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _dense_add(a: Dense, b: Dense) -> Dense:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = out[i] + y
    return out


def _check_ceiling(n: int, ceiling: int, what: str) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > ceiling:
        raise CeilingExceeded(n, ceiling, what)


def _monic_product(values: Sequence[Scalar]) -> Dense:
    return product([[-v, Fraction(1)] for v in values], [Fraction(1)], _dense_mul)


def eval_F(n: int, t: Scalar, u: Sequence[Scalar], settings: Optional[FamilySettings] = None) -> SparsePoly:
    """F(t, u, Y) as a univariate polynomial in Y, exact."""
    settings = settings or FamilySettings()
    _check_ceiling(n, settings.f_ceiling, "eliminant")
    if len(u) != n:
        raise ValueError(f"Expected {n} U coordinates, got {len(u)}")
    return SparsePoly.from_univariate(_monic_product(roots(n, t, u)))


def _jet_mul(a: Tuple[Dense, Dense], b: Tuple[Dense, Dense]) -> Tuple[Dense, Dense]:
    # (A1 + T B1)(A2 + T B2) mod T^2
    return _dense_mul(a[0], b[0]), _dense_add(_dense_mul(a[0], b[1]), _dense_mul(a[1], b[0]))


def _coefficient(poly: Dense, degree: int) -> Scalar:
    return poly[degree] if degree < len(poly) else Fraction(0)


def F_coeff_T_jet(n: int, u: Sequence[Scalar],
                  settings: Optional[FamilySettings] = None) -> Tuple[Tuple[Scalar, ...], Tuple[Scalar, ...]]:
    """
    Writes F = Y^(2^n) + sum_k phi_k Y^(2^n - k) and returns (lambda, L) with
    lambda_k = phi_k(T=0) and L_k = d phi_k / dT at T=0, for k = 1..2^n.

    lambda does not depend on u.
    """
    settings = settings or FamilySettings()
    _check_ceiling(n, settings.jet_ceiling, "jet")
    if len(u) != n:
        raise ValueError(f"Expected {n} U coordinates, got {len(u)}")
    u = [to_scalar(v) for v in u]
    pairs = [([Fraction(-j), Fraction(1)], [-multilinear_monomial(u, j)]) for j in range(2 ** n)]
    a, b = product(pairs, ([Fraction(1)], []), _jet_mul)
    top = 2 ** n
    lam = tuple(_coefficient(a, top - k) for k in range(1, top + 1))
    lin = tuple(_coefficient(b, top - k) for k in range(1, top + 1))
    return lam, lin


@dataclass(frozen=True)
class SymbolicJet:
    """
    lambda and L with U left symbolic.

    L_k(U) = sum_j K[k-1][j] * m_j(U) where m_j is the product of U_i over the
    set bits of j, so the evaluation matrix over points u_l factors as M * K^T.
    """
    n: int
    lam: Tuple[Scalar, ...]
    K: Tuple[Tuple[Scalar, ...], ...]
    L: Tuple[SparsePoly, ...]

    def monomial_matrix(self, points: Sequence[Sequence[Scalar]]) -> List[List[Scalar]]:
        return [[multilinear_monomial(p, j) for j in range(2 ** self.n)] for p in points]


def _deflate(poly: Dense, root: Scalar) -> Dense:
    """poly / (Y - root) for a root of poly."""
    degree = len(poly) - 1
    quotient = [Fraction(0)] * degree
    quotient[degree - 1] = poly[degree]
    for k in range(degree - 1, 0, -1):
        quotient[k - 1] = poly[k] + root * quotient[k]
    return quotient


def F_coeff_T_jet_symbolic(n: int, settings: Optional[FamilySettings] = None) -> SymbolicJet:
    settings = settings or FamilySettings()
    _check_ceiling(n, settings.jet_ceiling, "jet")
    top = 2 ** n
    a = _monic_product([Fraction(j) for j in range(top)])
    lam = tuple(_coefficient(a, top - k) for k in range(1, top + 1))
    columns = []
    for j in range(top):
        quotient = _deflate(a, Fraction(j))
        columns.append([-_coefficient(quotient, top - k) for k in range(1, top + 1)])
    K = tuple(tuple(columns[j][k] for j in range(top)) for k in range(top))
    L = []
    for row in K:
        terms = {tuple((j >> i) & 1 for i in range(n)): c for j, c in enumerate(row) if c != 0}
        L.append(SparsePoly(n, terms))
    return SymbolicJet(n, lam, K, tuple(L))


def identity_sides(n: int, t: Scalar, u: Sequence[Scalar],
                   settings: Optional[FamilySettings] = None) -> Tuple[SparsePoly, SparsePoly]:
    """
    Both sides of prod_eps (Y - H(t, u, eps)) == F(t, u, Y): the left side
    evaluates the H circuit at every Boolean point.
    """
    settings = settings or FamilySettings()
    rhs = eval_F(n, t, u, settings)
    circuit = build_H(n)
    params = [to_scalar(t)] + [to_scalar(v) for v in u]
    values = [eval_point(circuit, params, list(eps)).outputs[0] for eps in itertools.product((0, 1), repeat=n)]
    lhs = SparsePoly.from_univariate(_monic_product(values))
    return lhs, rhs


def verify_elimination_identity(n: int, t: Scalar, u: Sequence[Scalar],
                                settings: Optional[FamilySettings] = None) -> bool:
    lhs, rhs = identity_sides(n, t, u, settings)
    if lhs != rhs:
        logger.warning(f"Elimination identity fails for n={n} at t={t}")
        return False
    return True
