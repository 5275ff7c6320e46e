#!filepath: algebra/ratfunc.py
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ArityMismatch
from .scalar import GaussianRational, Scalar, to_scalar
from .sparse_poly import SparsePoly
from .sympy_bridge import cancel_common_factor


class RatFunc:
    """
    Quotient of two SparsePoly values over the same variables.

    Normal form: common monomial content removed, exact polynomial quotients
    folded away, the remaining polynomial gcd cancelled (sympy), denominator
    with leading coefficient 1.
    Two RatFunc compare equal iff num1*den2 == num2*den1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: SparsePoly, den: SparsePoly = None, normalize: bool = True):
        if den is None:
            den = SparsePoly.one(num.nvars)
        if num.nvars != den.nvars:
            raise ArityMismatch(num.nvars, den.nvars)
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with identically zero denominator")
        if normalize:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, poly: SparsePoly) -> "RatFunc":
        return cls(poly, SparsePoly.one(poly.nvars), normalize=False)

    @classmethod
    def constant(cls, nvars: int, value) -> "RatFunc":
        return cls.from_poly(SparsePoly.constant(nvars, value))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def denominator_free_of(self, indices: Iterable[int]) -> bool:
        """True when the (normalized) denominator does not involve the given variables."""
        return not self.den.depends_on(indices)

    def as_poly(self) -> SparsePoly:
        if not self.den.is_constant():
            raise ValueError(f"{self} is not a polynomial")
        return self.num / self.den.constant_value()

    def term_count(self) -> int:
        return len(self.num) + len(self.den)

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.nvars != self.nvars:
                raise ArityMismatch(self.nvars, other.nvars)
            return other
        if isinstance(other, SparsePoly):
            return RatFunc.from_poly(other)
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            return RatFunc.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, normalize=False)

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
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("Division by the identically zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return RatFunc.constant(self.nvars, 1) / (self ** -exponent)
        return RatFunc(self.num ** exponent, self.den ** exponent)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def evaluate(self, point: Sequence) -> Scalar:
        """Exact value at a point; ZeroDivisionError when the denominator vanishes there."""
        denominator = self.den.evaluate(point)
        if denominator == 0:
            raise ZeroDivisionError("Denominator vanishes at the evaluation point")
        return self.num.evaluate(point) / denominator

    def compose(self, funcs: Sequence["RatFunc"]) -> "RatFunc":
        """Substitutes rational functions for the variables."""
        if len(funcs) != self.nvars:
            raise ArityMismatch(self.nvars, len(funcs))
        if not funcs:
            return self
        one = RatFunc.constant(funcs[0].nvars, 1)
        numerator = self.num.evaluate_with(list(funcs), one)
        denominator = self.den.evaluate_with(list(funcs), one)
        return numerator / denominator

    def __repr__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return f"RatFunc({self.num.format()})"
        return f"RatFunc(({self.num.format()}) / ({self.den.format()}))"


def _normalize(num: SparsePoly, den: SparsePoly):
    nvars = num.nvars
    if num.is_zero():
        return num, SparsePoly.one(nvars)
    content = tuple(min(a, b) for a, b in zip(num.monomial_content(), den.monomial_content()))
    if any(content):
        num = num.shift_down(content)
        den = den.shift_down(content)
    if den.is_constant():
        return num / den.constant_value(), SparsePoly.one(nvars)
    quotient = num.divide_exact(den)
    if quotient is not None:
        return quotient, SparsePoly.one(nvars)
    inverse = den.divide_exact(num)
    if inverse is not None:
        _, lead = inverse.leading_term()
        factor = 1 / to_scalar(lead)
        return SparsePoly.constant(nvars, factor), inverse.scale(factor)
    num, den = cancel_common_factor(num, den)
    if den.is_constant():
        return num / den.constant_value(), SparsePoly.one(nvars)
    _, lead = den.leading_term()
    if lead != 1:
        factor = 1 / to_scalar(lead)
        num = num.scale(factor)
        den = den.scale(factor)
    return num, den

