#!filepath: tests/test_algebra.py
import random
from fractions import Fraction

import pytest
import sympy

from algebra import (GaussianRational, PrecisionExhausted, RatFunc, ScalarFormatError, SparsePoly, TruncatedLaurent,
                     exact_matmul, exact_rank, format_scalar, laurent_div, parse_scalar, transpose)

X = SparsePoly.variable(2, 0)
Y = SparsePoly.variable(2, 1)


def test_scalar_wire_forms():
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar("-7") == Fraction(-7)
    z = parse_scalar("1/2+3 i")
    assert z == GaussianRational(Fraction(1, 2), Fraction(3))
    assert format_scalar(z) == "1/2+3 i"
    assert format_scalar(parse_scalar("2-1/3 i")) == "2-1/3 i"
    assert parse_scalar("5 i") == GaussianRational(0, 5)


@pytest.mark.parametrize("text", ["0.5", "1e3", "abc", "1/0", ""])
def test_scalar_rejects_inexact_text(text):
    with pytest.raises(ScalarFormatError):
        parse_scalar(text)


def test_gaussian_products_collapse_to_rationals():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert isinstance(i * i, Fraction)
    z = GaussianRational(1, 2)
    assert z * z.conjugate() == 5
    assert (z / z) == 1


def test_poly_arithmetic_matches_sympy():
    x, y = sympy.symbols("x y")
    p = (X + Y) ** 3 - X * Y * 2 + Fraction(1, 3)
    expected = sympy.Poly(sympy.expand((x + y) ** 3 - 2 * x * y + sympy.Rational(1, 3)), x, y)
    assert {k: Fraction(int(v.p), int(v.q)) for k, v in expected.terms()} == dict(p.items())


def test_poly_evaluation_and_identity():
    p = (X - Y) * (X + Y)
    assert p == X * X - Y * Y
    assert p.evaluate([3, 2]) == 5
    assert p.degree() == 2
    assert (p - p).is_zero()


def test_divide_exact():
    assert (X * X - Y * Y).divide_exact(X - Y) == X + Y
    assert (X * X + 1).divide_exact(X) is None
    with pytest.raises(ZeroDivisionError):
        X.divide_exact(SparsePoly.zero(2))


def test_ratfunc_normalizes_exact_quotients():
    f = RatFunc(X * X, X)
    assert f.is_polynomial()
    assert f.as_poly() == X
    g = RatFunc(X, Y) + RatFunc(Y, Y)
    assert g == RatFunc(X + Y, Y)
    assert not g.denominator_free_of([1])
    assert g.evaluate([1, 2]) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        RatFunc(X, SparsePoly.zero(2))


def test_ratfunc_cancels_a_shared_factor():
    f = RatFunc((X + 1) * Y, (X + 1) * (Y + 1))
    assert f.num == Y and f.den == Y + 1
    assert f.denominator_free_of([0])
    i = GaussianRational(0, 1)
    g = RatFunc((X + i) * Y * 3, (X + i) * (Y * Y + 1))
    assert g.denominator_free_of([0])
    assert g == RatFunc(Y * 3, Y * Y + 1)


def test_laurent_precision_tracking():
    eps = TruncatedLaurent.epsilon(8)
    assert eps.order == 1 and eps.absolute_precision == 9
    inverse = 1 / eps
    assert inverse.order == -1
    one_minus = 1 - eps
    geometric = 1 / one_minus
    assert geometric.coefficients == tuple(Fraction(1) for _ in range(len(geometric.coefficients)))
    product = eps * eps * eps
    assert product.order == 3


def test_laurent_division_by_unknown_zero_raises():
    eps = TruncatedLaurent.epsilon(4)
    vanishing = eps - eps
    assert vanishing.is_zero_like()
    with pytest.raises(PrecisionExhausted):
        laurent_div(eps, vanishing)


def test_laurent_evaluate_at():
    series = TruncatedLaurent(-1, [Fraction(1), Fraction(2)])
    assert series.evaluate_at(Fraction(1, 2)) == 4


def test_exact_rank_small_cases():
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[-1, 1], [-2, 1]]) == 2
    assert exact_rank([]) == 0
    assert exact_rank([["1/2", "1/3"], ["1/4", "1/6"]]) == 1
    assert exact_rank([[GaussianRational(0, 1), 1], [1, GaussianRational(0, -1)]]) == 1


def test_exact_rank_agrees_with_sympy():
    rng = random.Random(11)
    for _ in range(20):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        base = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(cols)] for _ in range(rows)]
        if rows > 2:
            base[-1] = [a + b for a, b in zip(base[0], base[1])]
        expected = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in base]).rank()
        assert exact_rank(base) == expected
        assert exact_rank(base, primes=[]) == expected


def test_matmul_and_transpose():
    a = [[1, 2], [3, 4]]
    assert exact_matmul(a, transpose(a)) == [[5, 11], [11, 25]]
