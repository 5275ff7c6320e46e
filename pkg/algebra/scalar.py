#!filepath: algebra/scalar.py
"""
Exact scalars: rationals (fractions.Fraction) and Gaussian rationals a + b*i.

Wire form is "p/q" for rationals (integers print as "p") and "p/q+r/s i" for
Gaussian rationals, matching str(Fraction) on both parts.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from .errors import ScalarFormatError

_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_GAUSSIAN_RE = re.compile(rf"^\s*({_RATIONAL})\s*([+-])\s*(\d+(?:/\d+)?)\s*\*?\s*i\s*$")
_IMAGINARY_RE = re.compile(rf"^\s*({_RATIONAL})\s*\*?\s*i\s*$")


@dataclass(frozen=True)
class GaussianRational:
    """An element re + im*i of Q(i). Results with a zero imaginary part collapse to Fraction."""
    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def _parts(other) -> Tuple[Fraction, Fraction]:
        if isinstance(other, GaussianRational):
            return other.re, other.im
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        raise TypeError(f"Unsupported operand for GaussianRational: {type(other).__name__}")

    def __add__(self, other):
        try:
            a, b = self._parts(other)
        except TypeError:
            return NotImplemented
        return make_scalar(self.re + a, self.im + b)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            a, b = self._parts(other)
        except TypeError:
            return NotImplemented
        return make_scalar(self.re - a, self.im - b)

    def __rsub__(self, other):
        try:
            a, b = self._parts(other)
        except TypeError:
            return NotImplemented
        return make_scalar(a - self.re, b - self.im)

    def __mul__(self, other):
        try:
            a, b = self._parts(other)
        except TypeError:
            return NotImplemented
        return make_scalar(self.re * a - self.im * b, self.re * b + self.im * a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            a, b = self._parts(other)
        except TypeError:
            return NotImplemented
        norm = a * a + b * b
        if norm == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return make_scalar((self.re * a + self.im * b) / norm, (self.im * a - self.re * b) / norm)

    def __rtruediv__(self, other):
        try:
            a, b = self._parts(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(a, b) / self

    def __neg__(self):
        return make_scalar(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return Fraction(1) / (self ** -exponent)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        try:
            a, b = self._parts(other)
        except TypeError:
            return NotImplemented
        return self.re == a and self.im == b

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)})"


Scalar = Union[Fraction, GaussianRational]


def make_scalar(re_part, im_part=0) -> Scalar:
    """Builds a scalar, collapsing to Fraction when the imaginary part vanishes."""
    im_part = Fraction(im_part)
    if im_part == 0:
        return Fraction(re_part)
    return GaussianRational(Fraction(re_part), im_part)


def to_scalar(value) -> Scalar:
    """Coerces int, Fraction, GaussianRational or a wire string into a Scalar."""
    if isinstance(value, GaussianRational):
        return make_scalar(value.re, value.im)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"Cannot interpret {value!r} as an exact scalar")


def parse_scalar(text: str) -> Scalar:
    """
    Parses the wire form of a scalar.

    Args:
        text: "p", "p/q", "p/q+r/s i", "p/q-r/s i" or "r/s i".

    Returns:
        Fraction or GaussianRational in canonical form.
    """
    stripped = text.strip()
    match = _GAUSSIAN_RE.match(stripped)
    if match:
        real, sign, imag = match.groups()
        im_part = Fraction(imag)
        return make_scalar(Fraction(real), -im_part if sign == "-" else im_part)
    match = _IMAGINARY_RE.match(stripped)
    if match:
        return make_scalar(0, Fraction(match.group(1)))
    try:
        value = Fraction(stripped)
    except (ValueError, ZeroDivisionError) as e:
        raise ScalarFormatError(f"Invalid scalar '{text}': {e}") from e
    if "." in stripped or "e" in stripped.lower():
        raise ScalarFormatError(f"Invalid scalar '{text}': decimals are not exact wire scalars")
    return value


def format_scalar(value: Scalar) -> str:
    """Inverse of parse_scalar."""
    if isinstance(value, GaussianRational):
        if value.im == 0:
            return str(value.re)
        sign = "-" if value.im < 0 else "+"
        return f"{value.re}{sign}{abs(value.im)} i"
    return str(Fraction(value))


def scalar_magnitude(value: Scalar) -> Fraction:
    """Exact size measure: |x| for rationals, max(|re|, |im|) for Gaussian rationals."""
    if isinstance(value, GaussianRational):
        return max(abs(value.re), abs(value.im))
    return abs(Fraction(value))


def scalar_sort_key(value: Scalar) -> Tuple[Fraction, Fraction]:
    """Total order used to compare multisets of scalars."""
    if isinstance(value, GaussianRational):
        return value.re, value.im
    return Fraction(value), Fraction(0)
