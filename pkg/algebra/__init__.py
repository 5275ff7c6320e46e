#!filepath: algebra/__init__.py
from .errors import ArityMismatch, CircuitLabError, PrecisionExhausted, ScalarFormatError
from .scalar import GaussianRational, Scalar, format_scalar, make_scalar, parse_scalar, to_scalar
from .sparse_poly import SparsePoly, poly_add, poly_eval, poly_mul, product
from .sympy_bridge import cancel_common_factor, exact_inverse, independent_rows, irreducible_factors
from .ratfunc import RatFunc
from .laurent import TruncatedLaurent, laurent_div, laurent_mul
from .linalg import exact_matmul, exact_rank, transpose
from .config import AlgebraSettings
