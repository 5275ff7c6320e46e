#!filepath: algebra/sparse_poly.py
"""
Exact sparse multivariate polynomials.

A polynomial in v variables is a map from exponent tuples (length v) to nonzero
exact scalars. The zero polynomial has no terms. Instances are immutable and
hashable, so they can key dictionaries (hash-consing, fingerprint tables).
"""
from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import ArityMismatch
from .scalar import GaussianRational, Scalar, format_scalar, parse_scalar, to_scalar

Exponent = Tuple[int, ...]


class SparsePoly:
    """Immutable sparse polynomial with exact (rational or Gaussian rational) coefficients."""

    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponent, Any]] = None, _trusted: bool = False):
        if nvars < 0:
            raise ValueError(f"Variable count must be non-negative, got {nvars}")
        self._nvars = nvars
        self._hash = None
        if _trusted:
            self._terms = terms if terms is not None else {}
            return
        cleaned: Dict[Exponent, Scalar] = {}
        for exponent, coefficient in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != nvars:
                raise ArityMismatch(nvars, len(exponent))
            if any(e < 0 for e in exponent):
                raise ValueError(f"Negative exponent in {exponent}")
            value = to_scalar(coefficient)
            if value != 0:
                cleaned[exponent] = cleaned.get(exponent, Fraction(0)) + value
        self._terms = {e: c for e, c in cleaned.items() if c != 0}

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls(nvars, {}, _trusted=True)

    @classmethod
    def constant(cls, nvars: int, value) -> "SparsePoly":
        value = to_scalar(value)
        if value == 0:
            return cls.zero(nvars)
        return cls(nvars, {(0,) * nvars: value}, _trusted=True)

    @classmethod
    def one(cls, nvars: int) -> "SparsePoly":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int) -> "SparsePoly":
        """The polynomial X_index (0-based)."""
        if not 0 <= index < nvars:
            raise ValueError(f"Invalid variable index {index} for {nvars} variables")
        exponent = [0] * nvars
        exponent[index] = 1
        return cls(nvars, {tuple(exponent): Fraction(1)}, _trusted=True)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient=1) -> "SparsePoly":
        return cls(len(exponent), {tuple(exponent): coefficient})

    # accessors

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[Exponent, Scalar]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterable[Tuple[Exponent, Scalar]]:
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self._nvars in self._terms)

    def constant_value(self) -> Scalar:
        """The value of a constant polynomial; raises ValueError otherwise."""
        if not self.is_constant():
            raise ValueError(f"Polynomial {self} is not constant")
        return self._terms.get((0,) * self._nvars, Fraction(0))

    def constant_term(self) -> Scalar:
        return self._terms.get((0,) * self._nvars, Fraction(0))

    def coefficient(self, exponent: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(exponent), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, index: int) -> int:
        if not self._terms:
            return -1
        return max(e[index] for e in self._terms)

    def variables(self) -> frozenset:
        """Indices of the variables that actually occur."""
        used = set()
        for exponent in self._terms:
            used.update(i for i, e in enumerate(exponent) if e)
        return frozenset(used)

    def depends_on(self, indices: Iterable[int]) -> bool:
        return bool(self.variables() & set(indices))

    def leading_term(self) -> Tuple[Exponent, Scalar]:
        """Leading term in lexicographic order (X_0 > X_1 > ...)."""
        if not self._terms:
            raise ValueError("The zero polynomial has no leading term")
        exponent = max(self._terms)
        return exponent, self._terms[exponent]

    # ring operations

    def _coerce(self, other) -> Optional["SparsePoly"]:
        if isinstance(other, SparsePoly):
            if other._nvars != self._nvars:
                raise ArityMismatch(self._nvars, other._nvars)
            return other
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            return SparsePoly.constant(self._nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            value = out.get(exponent, 0) + coefficient
            if value == 0:
                out.pop(exponent, None)
            else:
                out[exponent] = value
        return SparsePoly(self._nvars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self._nvars, {e: -c for e, c in self._terms.items()}, _trusted=True)

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
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return SparsePoly.zero(self._nvars)
        out: Dict[Exponent, Scalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = tuple(a + b for a, b in zip(e1, e2))
                out[exponent] = out.get(exponent, 0) + c1 * c2
        return SparsePoly(self._nvars, {e: c for e, c in out.items() if c != 0}, _trusted=True)

    __rmul__ = __mul__

    def scale(self, factor) -> "SparsePoly":
        factor = to_scalar(factor)
        if factor == 0:
            return SparsePoly.zero(self._nvars)
        return SparsePoly(self._nvars, {e: c * factor for e, c in self._terms.items()}, _trusted=True)

    def __truediv__(self, other):
        if isinstance(other, SparsePoly):
            other = other.constant_value()
        factor = to_scalar(other)
        if factor == 0:
            raise ZeroDivisionError("SparsePoly division by zero scalar")
        return self.scale(Fraction(1) / factor)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = SparsePoly.one(self._nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self._nvars == other._nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    # evaluation and substitution

    def evaluate(self, point: Sequence) -> Scalar:
        """Substitutes every variable; exact."""
        if len(point) != self._nvars:
            raise ArityMismatch(self._nvars, len(point))
        values = [to_scalar(v) for v in point]
        total: Scalar = Fraction(0)
        for exponent, coefficient in self._terms.items():
            term = coefficient
            for value, power in zip(values, exponent):
                if power:
                    term = term * value ** power
            total = total + term
        return total

    def evaluate_with(self, values: Sequence[Any], one: Any) -> Any:
        """
        Evaluates over any commutative ring whose elements accept scalar
        multiplication (polynomials, truncated Laurent series, ...).

        Args:
            values: one ring element per variable.
            one: the ring's unit, returned (scaled) for constant terms.
        """
        if len(values) != self._nvars:
            raise ArityMismatch(self._nvars, len(values))
        total = one * 0
        power_cache: Dict[Tuple[int, int], Any] = {}
        for exponent, coefficient in self._terms.items():
            term = one * coefficient
            for index, power in enumerate(exponent):
                if power:
                    key = (index, power)
                    if key not in power_cache:
                        power_cache[key] = values[index] ** power
                    term = term * power_cache[key]
            total = total + term
        return total

    def compose(self, polys: Sequence["SparsePoly"]) -> "SparsePoly":
        """Replaces variable i by polys[i]; all substitutes share one arity."""
        if len(polys) != self._nvars:
            raise ArityMismatch(self._nvars, len(polys))
        if not polys:
            return self
        target = polys[0].nvars
        return self.evaluate_with(list(polys), SparsePoly.one(target))

    def substitute(self, assignments: Mapping[int, Any]) -> "SparsePoly":
        """Partial evaluation: variables in `assignments` become scalars, arity is kept."""
        out: Dict[Exponent, Scalar] = {}
        values = {i: to_scalar(v) for i, v in assignments.items()}
        for exponent, coefficient in self._terms.items():
            value = coefficient
            reduced = list(exponent)
            for index, scalar in values.items():
                if exponent[index]:
                    value = value * scalar ** exponent[index]
                    reduced[index] = 0
            key = tuple(reduced)
            out[key] = out.get(key, 0) + value
        return SparsePoly(self._nvars, {e: c for e, c in out.items() if c != 0}, _trusted=True)

    def embed(self, nvars: int, positions: Sequence[int]) -> "SparsePoly":
        """Re-indexes variables: variable i becomes variable positions[i] of an nvars-ary ring."""
        if len(positions) != self._nvars:
            raise ArityMismatch(self._nvars, len(positions))
        out: Dict[Exponent, Scalar] = {}
        for exponent, coefficient in self._terms.items():
            target = [0] * nvars
            for index, power in enumerate(exponent):
                if power:
                    target[positions[index]] += power
            key = tuple(target)
            out[key] = out.get(key, 0) + coefficient
        return SparsePoly(nvars, {e: c for e, c in out.items() if c != 0}, _trusted=True)

    def split(self, indices: Sequence[int]) -> Dict[Exponent, "SparsePoly"]:
        """
        Writes the polynomial as sum over monomials in the variables `indices`
        with coefficients free of those variables.

        Returns:
            Mapping from the exponent restricted to `indices` to its coefficient polynomial
            (same arity, with the `indices` exponents zeroed).
        """
        groups: Dict[Exponent, Dict[Exponent, Scalar]] = {}
        index_set = set(indices)
        for exponent, coefficient in self._terms.items():
            key = tuple(exponent[i] for i in indices)
            rest = tuple(0 if i in index_set else e for i, e in enumerate(exponent))
            groups.setdefault(key, {})[rest] = coefficient
        return {key: SparsePoly(self._nvars, terms, _trusted=True) for key, terms in groups.items()}

    # division

    def monomial_content(self) -> Exponent:
        """Componentwise minimum exponent, i.e. the largest monomial dividing every term."""
        if not self._terms:
            return (0,) * self._nvars
        return tuple(min(column) for column in zip(*self._terms))

    def shift_down(self, exponent: Sequence[int]) -> "SparsePoly":
        """Divides by the monomial x^exponent, which must divide every term."""
        out = {}
        for e, c in self._terms.items():
            reduced = tuple(a - b for a, b in zip(e, exponent))
            if any(v < 0 for v in reduced):
                raise ValueError(f"Monomial {tuple(exponent)} does not divide term {e}")
            out[reduced] = c
        return SparsePoly(self._nvars, out, _trusted=True)

    def divide_exact(self, divisor: "SparsePoly", max_steps: int = 100000) -> Optional["SparsePoly"]:
        """
        Exact division by multivariate long division in lex order.

        Returns:
            The quotient q with self = q * divisor, or None when the divisor does not divide.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("Division by the zero polynomial")
        if self.is_zero():
            return SparsePoly.zero(self._nvars)
        lead_exp, lead_coef = divisor.leading_term()
        remainder = dict(self._terms)
        quotient: Dict[Exponent, Scalar] = {}
        steps = 0
        while remainder:
            steps += 1
            if steps > max_steps:
                return None
            exponent = max(remainder)
            shift = tuple(a - b for a, b in zip(exponent, lead_exp))
            if any(s < 0 for s in shift):
                return None
            factor = remainder[exponent] / lead_coef
            quotient[shift] = quotient.get(shift, 0) + factor
            for d_exp, d_coef in divisor._terms.items():
                key = tuple(a + b for a, b in zip(d_exp, shift))
                value = remainder.get(key, 0) - factor * d_coef
                if value == 0:
                    remainder.pop(key, None)
                else:
                    remainder[key] = value
        return SparsePoly(self._nvars, {e: c for e, c in quotient.items() if c != 0}, _trusted=True)

    # univariate helpers

    def univariate_coefficients(self) -> List[Scalar]:
        """Dense coefficients [c_0, c_1, ..., c_d] of a polynomial in one variable."""
        if self._nvars != 1:
            raise ArityMismatch(1, self._nvars)
        if not self._terms:
            return []
        out = [Fraction(0)] * (self.degree() + 1)
        for (power,), coefficient in self._terms.items():
            out[power] = coefficient
        return out

    @classmethod
    def from_univariate(cls, coefficients: Sequence[Any]) -> "SparsePoly":
        return cls(1, {(power,): c for power, c in enumerate(coefficients) if c != 0})

    # serialization

    def to_dict(self, names: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        names = list(names) if names is not None else [f"x{i + 1}" for i in range(self._nvars)]
        terms = [{"exp": list(e), "coef": format_scalar(c)} for e, c in sorted(self._terms.items(), reverse=True)]
        return {"vars": names, "terms": terms}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SparsePoly":
        nvars = len(data["vars"])
        terms: Dict[Exponent, Scalar] = {}
        for term in data.get("terms", []):
            exponent = tuple(term["exp"])
            coefficient = term["coef"]
            value = parse_scalar(coefficient) if isinstance(coefficient, str) else to_scalar(coefficient)
            terms[exponent] = terms.get(exponent, 0) + value
        return cls(nvars, terms)

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if not self._terms:
            return "0"
        names = list(names) if names is not None else [f"x{i + 1}" for i in range(self._nvars)]
        pieces = []
        for exponent, coefficient in sorted(self._terms.items(), reverse=True):
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exponent) if e]
            text = format_scalar(coefficient)
            if not factors:
                pieces.append(text)
            elif coefficient == 1:
                pieces.append("*".join(factors))
            elif coefficient == -1:
                pieces.append("-" + "*".join(factors))
            else:
                pieces.append(f"({text})*" + "*".join(factors))
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self):
        return f"SparsePoly({self.format()})"


def poly_add(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    return a + b


def poly_mul(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    return a * b


def poly_eval(p: SparsePoly, point: Sequence) -> Scalar:
    return p.evaluate(point)


def product(factors: Sequence[Any], one: Any, multiply: Callable[[Any, Any], Any] = None) -> Any:
    """
    Balanced binary product tree with a fixed association order, so results do
    not depend on how the work is scheduled.
    """
    multiply = multiply or (lambda a, b: a * b)
    layer = list(factors)
    if not layer:
        return one
    while len(layer) > 1:
        paired = [multiply(layer[i], layer[i + 1]) for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            paired.append(layer[-1])
        layer = paired
    return layer[0]
