#!filepath: algebra/sympy_bridge.py
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy.polys.polyerrors import BasePolynomialError

from .scalar import GaussianRational, Scalar, make_scalar, to_scalar
from .sparse_poly import SparsePoly

logger = logging.getLogger(__name__)


def to_sympy_scalar(value: Scalar):
    if isinstance(value, GaussianRational):
        return sympy.Rational(value.re.numerator, value.re.denominator) + \
            sympy.I * sympy.Rational(value.im.numerator, value.im.denominator)
    return sympy.Rational(value.numerator, value.denominator)


def from_sympy_scalar(value) -> Scalar:
    re_part, im_part = (sympy.Rational(part) for part in sympy.sympify(value).as_real_imag())
    return make_scalar(Fraction(int(re_part.p), int(re_part.q)), Fraction(int(im_part.p), int(im_part.q)))


def coefficient_domain(*polys: SparsePoly):
    """QQ, or QQ_I as soon as one coefficient is a Gaussian rational."""
    gaussian = any(isinstance(c, GaussianRational) for poly in polys for _, c in poly.items())
    return sympy.QQ_I if gaussian else sympy.QQ


def to_sympy_poly(poly: SparsePoly, domain=None) -> sympy.Poly:
    gens = sympy.symbols(f"v0:{poly.nvars}")
    domain = domain if domain is not None else coefficient_domain(poly)
    return sympy.Poly.from_dict({e: to_sympy_scalar(c) for e, c in poly.items()}, *gens, domain=domain)


def from_sympy_poly(poly: sympy.Poly, nvars: int) -> SparsePoly:
    return SparsePoly(nvars, {e: from_sympy_scalar(c) for e, c in poly.terms()})


def cancel_common_factor(num: SparsePoly, den: SparsePoly) -> Tuple[SparsePoly, SparsePoly]:
    """Divides num and den by their polynomial gcd over Q (or Q(i) when a coefficient is Gaussian)."""
    nvars = num.nvars
    if nvars == 0:
        return num, den
    domain = coefficient_domain(num, den)
    reduced_num, reduced_den = to_sympy_poly(num, domain).cancel(to_sympy_poly(den, domain), include=True)
    return from_sympy_poly(reduced_num, nvars), from_sympy_poly(reduced_den, nvars)


def irreducible_factors(poly: SparsePoly) -> Optional[List[SparsePoly]]:
    """
    Distinct non-constant irreducible factors (multiplicities dropped), or
    None when sympy cannot factor over the coefficient domain.
    """
    if poly.nvars == 0 or poly.is_constant():
        return []
    try:
        _, factors = to_sympy_poly(poly).factor_list()
    except (BasePolynomialError, NotImplementedError) as e:
        logger.debug(f"Could not factor {poly.format()}: {e}")
        return None
    return [from_sympy_poly(factor, poly.nvars) for factor, _ in factors if not factor.is_ground]


def to_sympy_matrix(matrix: Sequence[Sequence]) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy_scalar(to_scalar(v)) for v in row] for row in matrix])


def independent_rows(matrix: Sequence[Sequence]) -> List[int]:
    """Indices of the first rows, in order, that span the row space (pivots of the transposed rref)."""
    if not matrix:
        return []
    _, pivots = to_sympy_matrix(matrix).T.rref()
    return list(pivots)


def exact_inverse(matrix: Sequence[Sequence]) -> List[List[Scalar]]:
    """
    Raises:
        ZeroDivisionError: the matrix is singular.
    """
    try:
        inverse = to_sympy_matrix(matrix).inv()
    except ValueError as e:
        raise ZeroDivisionError(f"Matrix is not invertible: {e}") from e
    return [[from_sympy_scalar(v) for v in inverse.row(i)] for i in range(inverse.rows)]
