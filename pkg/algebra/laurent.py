#!filepath: algebra/laurent.py
"""
Truncated Laurent series in one variable (epsilon).

A series is stored as its order o (the exponent of the first retained
coefficient), the retained coefficients c_o ... c_{o+N-1} and therefore its
absolute precision o+N: the value is known modulo epsilon^(o+N).

Coefficients may be exact scalars or SparsePoly values (polynomials in X), so
one class carries both parameter germs u(eps) and approximative intermediate
results G(u(eps), X).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence

from .errors import PrecisionExhausted
from .scalar import GaussianRational, Scalar, to_scalar
from .sparse_poly import SparsePoly

_SCALAR_TYPES = (int, Fraction, GaussianRational)


def _is_zero(value: Any) -> bool:
    return value == 0


class TruncatedLaurent:
    """Immutable truncated Laurent series; leading retained coefficient is nonzero unless the series is zero-like."""

    __slots__ = ("_order", "_coeffs", "_zero")

    def __init__(self, order: int, coeffs: Sequence[Any], zero: Any = Fraction(0)):
        coeffs = list(coeffs)
        absolute = order + len(coeffs)
        start = 0
        while start < len(coeffs) and _is_zero(coeffs[start]):
            start += 1
        if start == len(coeffs):
            # indistinguishable from zero: nothing below epsilon^absolute is known to be nonzero
            self._order = absolute
            self._coeffs = ()
        else:
            self._order = order + start
            self._coeffs = tuple(coeffs[start:])
        self._zero = zero

    # constructors

    @classmethod
    def from_coefficients(cls, order: int, coeffs: Sequence[Any], precision: Optional[int] = None,
                          zero: Any = Fraction(0)) -> "TruncatedLaurent":
        """Builds o + coefficient list, padded with zeros (or cut) to `precision` retained terms."""
        coeffs = list(coeffs)
        if precision is not None:
            if len(coeffs) < precision:
                coeffs = coeffs + [zero] * (precision - len(coeffs))
            else:
                coeffs = coeffs[:precision]
        return cls(order, coeffs, zero)

    @classmethod
    def constant(cls, value: Any, precision: int, zero: Any = Fraction(0)) -> "TruncatedLaurent":
        return cls.from_coefficients(0, [value], precision, zero)

    @classmethod
    def epsilon(cls, precision: int) -> "TruncatedLaurent":
        return cls.from_coefficients(1, [Fraction(1)], precision)

    # accessors

    @property
    def order(self) -> int:
        return self._order

    @property
    def precision(self) -> int:
        """Number of retained (relative) terms."""
        return len(self._coeffs)

    @property
    def absolute_precision(self) -> int:
        return self._order + len(self._coeffs)

    @property
    def coefficients(self) -> tuple:
        return self._coeffs

    @property
    def zero(self) -> Any:
        return self._zero

    def is_zero_like(self) -> bool:
        return not self._coeffs

    def leading_coefficient(self) -> Any:
        if not self._coeffs:
            raise PrecisionExhausted("Series is indistinguishable from zero at its current precision")
        return self._coeffs[0]

    def coefficient(self, exponent: int) -> Any:
        """Coefficient of epsilon^exponent; exponents at or beyond the absolute precision are unknown."""
        if exponent >= self.absolute_precision:
            raise PrecisionExhausted(f"Coefficient of eps^{exponent} is beyond precision {self.absolute_precision}")
        if exponent < self._order:
            return self._zero
        return self._coeffs[exponent - self._order]

    def is_holomorphic(self) -> bool:
        return self._order >= 0

    # arithmetic

    def _coerce(self, other) -> Optional["TruncatedLaurent"]:
        if isinstance(other, TruncatedLaurent):
            return other
        if isinstance(other, _SCALAR_TYPES + (SparsePoly,)) and not isinstance(other, bool):
            # exact constant: as precise as self
            absolute = self.absolute_precision
            if absolute <= 0:
                return TruncatedLaurent(absolute, [], self._zero)
            return TruncatedLaurent.from_coefficients(0, [other], absolute, self._zero)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        absolute = min(self.absolute_precision, other.absolute_precision)
        low = min(self._order, other._order)
        if low >= absolute:
            return TruncatedLaurent(absolute, [], self._zero)
        coeffs = [self._coefficient_or_zero(k) + other._coefficient_or_zero(k) for k in range(low, absolute)]
        return TruncatedLaurent(low, coeffs, self._zero)

    __radd__ = __add__

    def _coefficient_or_zero(self, exponent: int) -> Any:
        if exponent < self._order:
            return self._zero
        return self._coeffs[exponent - self._order]

    def __neg__(self):
        return TruncatedLaurent(self._order, [-c for c in self._coeffs], self._zero) if self._coeffs \
            else TruncatedLaurent(self._order, [], self._zero)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, _SCALAR_TYPES + (SparsePoly,)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, TruncatedLaurent):
            return NotImplemented
        order = self._order + other._order
        size = min(len(self._coeffs), len(other._coeffs))
        coeffs = []
        for k in range(size):
            total = self._zero
            for i in range(k + 1):
                total = total + self._coeffs[i] * other._coeffs[k - i]
            coeffs.append(total)
        return TruncatedLaurent(order, coeffs, self._zero)

    __rmul__ = __mul__

    def scale(self, factor: Any) -> "TruncatedLaurent":
        """Multiplies every coefficient by an exact constant (scalar or coefficient-ring element)."""
        return TruncatedLaurent(self._order, [c * factor for c in self._coeffs], self._zero) if self._coeffs \
            else TruncatedLaurent(self._order, [], self._zero)

    def __truediv__(self, other):
        if isinstance(other, _SCALAR_TYPES) and not isinstance(other, bool):
            other = to_scalar(other)
            if other == 0:
                raise ZeroDivisionError("Series division by the zero scalar")
            return self.scale(1 / other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return laurent_div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return laurent_div(other, self)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return laurent_div(self._one(), self ** -exponent)
        result = self._one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def _one(self) -> "TruncatedLaurent":
        return TruncatedLaurent.from_coefficients(0, [self._zero + 1], max(len(self._coeffs), 1), self._zero)

    def __eq__(self, other):
        if not isinstance(other, TruncatedLaurent):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    __hash__ = None

    def agrees_with(self, other: "TruncatedLaurent") -> bool:
        """Equality of all coefficients known in both series."""
        absolute = min(self.absolute_precision, other.absolute_precision)
        low = min(self._order, other._order)
        return all(self._coefficient_or_zero(k) == other._coefficient_or_zero(k) for k in range(low, absolute))

    def truncate(self, absolute: int) -> "TruncatedLaurent":
        """Drops every coefficient at or beyond epsilon^absolute."""
        keep = max(0, min(len(self._coeffs), absolute - self._order))
        if keep == 0:
            return TruncatedLaurent(min(absolute, self.absolute_precision), [], self._zero)
        return TruncatedLaurent(self._order, self._coeffs[:keep], self._zero)

    def map_coefficients(self, fn: Callable[[Any], Any], zero: Any = None) -> "TruncatedLaurent":
        zero = self._zero if zero is None else zero
        return TruncatedLaurent(self._order, [fn(c) for c in self._coeffs], zero) if self._coeffs \
            else TruncatedLaurent(self._order, [], zero)

    def evaluate_at(self, eps: Scalar) -> Any:
        """Sums the retained terms at a nonzero number; exact for Laurent polynomials."""
        eps = to_scalar(eps)
        total = self._zero
        for k, c in enumerate(self._coeffs):
            exponent = self._order + k
            if exponent < 0 and eps == 0:
                raise ZeroDivisionError("Negative power of epsilon evaluated at zero")
            total = total + c * (eps ** exponent)
        return total

    def is_polynomial_germ(self) -> bool:
        """True when no retained coefficient beyond epsilon^0 is nonzero and the order is zero (a constant)."""
        return self._order >= 0 and all(_is_zero(c) for c in self._coeffs[1:]) and (not self._coeffs or self._order == 0)

    def __repr__(self):
        if not self._coeffs:
            return f"TruncatedLaurent(O(eps^{self._order}))"
        body = " + ".join(f"({c})*eps^{self._order + k}" for k, c in enumerate(self._coeffs) if not _is_zero(c))
        return f"TruncatedLaurent({body} + O(eps^{self.absolute_precision}))"


def laurent_mul(a: TruncatedLaurent, b: TruncatedLaurent) -> TruncatedLaurent:
    return a * b


def laurent_div(a: TruncatedLaurent, b: TruncatedLaurent) -> TruncatedLaurent:
    """
    Long division of truncated Laurent series.

    The result has order(a) - order(b) and min(precision(a), precision(b)) retained terms.

    Raises:
        PrecisionExhausted: b is indistinguishable from zero at its precision.
        ValueError: the leading coefficient of b is not an invertible constant.
    """
    if b.is_zero_like():
        raise PrecisionExhausted(
            f"Division by a series indistinguishable from zero (known only modulo eps^{b.absolute_precision})")
    lead = b.leading_coefficient()
    if isinstance(lead, SparsePoly):
        if not lead.is_constant():
            raise ValueError("Leading coefficient of the divisor is not a constant; it cannot be inverted")
        lead = lead.constant_value()
    inverse = 1 / to_scalar(lead)
    order = a.order - b.order
    size = min(a.precision, b.precision)
    quotient: List[Any] = []
    for k in range(size):
        value = a.coefficients[k]
        for i in range(1, k + 1):
            value = value - b.coefficients[i] * quotient[k - i]
        quotient.append(value * inverse)
    if size == 0:
        return TruncatedLaurent(order, [], a.zero)
    return TruncatedLaurent(order, quotient, a.zero)
