#!filepath: lowerbound/evaluators.py
"""
Reference evaluators of the eliminant in Y.

naive_evaluator works over the coefficient chart: its parameters are the
coefficients phi_1..phi_{2^n} below the leading Y^(2^n). xi_evaluator works
over the Xi chart: its parameters are the values H(t, u, xi_k) at the
identification points, and every coefficient is computed from them among
parameter nodes.
"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from algebra.scalar import Scalar
from algebra.sympy_bridge import exact_inverse, independent_rows
from circuit_ir.circuit import Circuit, CircuitBuilder
from family.identification import point_count, span_matrix

logger = logging.getLogger(__name__)

FORMS = ("powers", "horner")
XI_FORMS = ("roots", "powers")


def _emit_powers(builder: CircuitBuilder, y: int, coefficients: Sequence[int]) -> int:
    """Y^d + sum_k c_k Y^(d - k) for coefficient nodes c_1..c_d."""
    degree = len(coefficients)
    powers = {1: y}
    for d in range(2, degree + 1):
        powers[d] = builder.mul(powers[d - 1], y)
    terms = [powers[degree]]
    for k in range(1, degree):
        terms.append(builder.mul(coefficients[k - 1], powers[degree - k]))
    terms.append(coefficients[degree - 1])
    return builder.sum(terms)


def naive_evaluator(n: int, form: str = "powers") -> Circuit:
    """
    Y^(2^n) + sum_k phi_k Y^(2^n - k) with one parameter per coefficient.

    "powers" multiplies every phi_k by a power of Y (2^n - 1 parameter
    multiplications, powers of Y by repeated multiplication); "horner" folds
    the coefficients into a Horner chain in Y.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if form not in FORMS:
        raise ValueError(f"Unknown evaluator form '{form}', expected one of {FORMS}")
    degree = 2 ** n
    builder = CircuitBuilder(degree, 1)
    y = builder.input(1)
    if form == "horner":
        acc = builder.add(y, builder.param(1))
        for k in range(2, degree + 1):
            acc = builder.add(builder.mul(acc, y), builder.param(k))
        return builder.build([acc])
    return builder.build([_emit_powers(builder, y, [builder.param(k) for k in range(1, degree + 1)])])


def root_weights(n: int, points: Sequence[Sequence[Scalar]]) -> Tuple[List[int], List[List[Scalar]]]:
    """
    Rows of the span matrix used for interpolation, and weights w with
    H(t, u, eps_j) = sum_k w[j][k] * H(t, u, xi_{rows[k]}).

    The multilinear coefficients theta are the inverse of the chosen square
    block applied to the chosen values; root j sums theta_S over the masks S
    contained in j.

    Raises:
        ValueError: the points do not separate the multilinear monomials.
    """
    degree = 2 ** n
    matrix = span_matrix(n, points)
    rows = independent_rows(matrix)
    if len(rows) < degree:
        raise ValueError(f"Points span only {len(rows)} of the {degree} multilinear monomials for n={n}")
    inverse = exact_inverse([matrix[r] for r in rows])
    weights = [[sum((inverse[mask][k] for mask in range(degree) if mask & j == mask), Fraction(0))
                for k in range(degree)] for j in range(degree)]
    return rows, weights


def _linear_combination(builder: CircuitBuilder, terms: Sequence[Tuple[Scalar, int]]) -> int:
    nodes = []
    for weight, index in terms:
        if weight == 0:
            continue
        param = builder.param(index)
        nodes.append(param if weight == 1 else builder.mul(builder.scalar(weight), param))
    return builder.sum(nodes)


def _expand_roots(builder: CircuitBuilder, roots: Sequence[int]) -> List[int]:
    """Coefficient nodes phi_1..phi_d of prod_j (Y - r_j), built among parameter nodes."""
    coefficients: List[int] = []
    for root in roots:
        updated = []
        previous: Optional[int] = None  # phi_0 = 1
        for k in range(len(coefficients) + 1):
            shifted = root if previous is None else builder.mul(root, previous)
            if k < len(coefficients):
                updated.append(builder.sub(coefficients[k], shifted))
            else:
                updated.append(builder.mul(builder.scalar(-1), shifted))
            previous = coefficients[k] if k < len(coefficients) else None
        coefficients = updated
    return coefficients


def xi_evaluator(n: int, points: Sequence[Sequence[Scalar]], form: str = "roots") -> Circuit:
    """
    Interpolating evaluator over the Xi chart at `points` (K = 16n^2 + 2 of them).

    The roots H(t, u, eps) are linear combinations of the parameters (scalar
    multiplications and additions only). "roots" multiplies the factors Y - r_j;
    "powers" expands phi_1..phi_{2^n} from the roots among parameter nodes and
    multiplies each by a power of Y. Either way the 2^n nodes entering the
    Y-dependent part are the only essential parameters.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if form not in XI_FORMS:
        raise ValueError(f"Unknown evaluator form '{form}', expected one of {XI_FORMS}")
    if len(points) != point_count(n):
        raise ValueError(f"Expected {point_count(n)} identification points for n={n}, got {len(points)}")
    rows, weights = root_weights(n, points)
    builder = CircuitBuilder(len(points), 1)
    y = builder.input(1)
    roots = [_linear_combination(builder, [(w, rows[k] + 1) for k, w in enumerate(row)]) for row in weights]
    logger.debug(f"Xi evaluator for n={n} interpolates from points {[r + 1 for r in rows]}")
    if form == "roots":
        out = builder.prod([builder.sub(y, root) for root in roots])
    else:
        out = _emit_powers(builder, y, _expand_roots(builder, roots))
    return builder.build([out])
