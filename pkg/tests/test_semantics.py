#!filepath: tests/test_semantics.py
from fractions import Fraction

import pytest

from algebra import RatFunc
from algebra.sparse_poly import SparsePoly
from circuit_ir import AffineSpace, CircuitBuilder, Localized, PointDomain
from family.builders import build_H, h_poly
from semantics import (BudgetExceeded, DivisionByZero, DivisionByZeroFunction, FingerprintMismatch, SplitRandom,
                       Verdict, consistency_check, equal_results, eval_point, expand_symbolic, fingerprint,
                       node_value_table)

from conftest import divide_by_param_difference, square_plus_param


def divide_input_by_param():
    builder = CircuitBuilder(1, 1)
    out = builder.div(builder.input(1), builder.param(1))
    return builder.build([out]), out


def test_eval_h2():
    assert eval_point(build_H(2), [1, 1, 1], [1, 1]).outputs == (Fraction(4),)
    assert eval_point(build_H(2), [0, 5, 7], [1, 1]).outputs == (Fraction(3),)


def test_eval_rational_and_gaussian_points():
    circuit = square_plus_param()
    assert eval_point(circuit, [Fraction(1, 2)], [Fraction(1, 3)]).outputs == (Fraction(11, 18),)
    assert eval_point(circuit, [1], ["1 i"]).outputs == (Fraction(0),)


def test_division_by_zero_at_a_point():
    circuit, div = divide_input_by_param()
    with pytest.raises(DivisionByZero) as info:
        eval_point(circuit, [0], [5])
    assert info.value.node == div
    trace = eval_point(circuit, [0], [5], raise_on_failure=False)
    assert trace.failure_site == div and not trace.ok


def test_expand_h2_matches_the_defining_polynomial():
    expansion = expand_symbolic(build_H(2))
    assert expansion.outputs[0].as_poly() == h_poly(2)
    assert expansion.polynomial_in_x
    assert expansion.totally_division_free


def test_quotient_that_is_a_polynomial_is_still_flagged():
    builder = CircuitBuilder(0, 1)
    x = builder.input(1)
    out = builder.div(builder.mul(x, x), x)
    expansion = expand_symbolic(builder.build([out]))
    assert expansion.outputs[0].as_poly() == SparsePoly.variable(1, 0)
    assert expansion.polynomial_in_x
    assert not expansion.essentially_division_free


def test_common_factor_in_x_cancels():
    builder = CircuitBuilder(1, 1)
    u, x = builder.param(1), builder.input(1)
    x_plus_one = builder.add(x, builder.scalar(1))
    out = builder.div(builder.mul(x_plus_one, u), builder.mul(x_plus_one, builder.add(u, builder.scalar(1))))
    expansion = expand_symbolic(builder.build([out]))
    assert expansion.polynomial_in_x and expansion.non_polynomial_nodes == []
    u1 = SparsePoly.variable(2, 0)
    assert expansion.outputs[0] == RatFunc(u1, u1 + 1)


def test_division_by_the_zero_function():
    builder = CircuitBuilder(0, 1)
    x = builder.input(1)
    out = builder.div(builder.scalar(1), builder.sub(x, x))
    with pytest.raises(DivisionByZeroFunction) as info:
        expand_symbolic(builder.build([out]))
    assert info.value.node == out


def test_expand_budget():
    with pytest.raises(BudgetExceeded):
        expand_symbolic(build_H(6), budget=10)


def test_consistency_on_localized_and_affine_domains():
    circuit, div = divide_input_by_param()
    u1 = SparsePoly.variable(1, 0)
    on_zero = consistency_check(circuit, Localized(1, [u1]))
    assert on_zero.verdict == Verdict.INCONSISTENT and on_zero.node == div
    sampled = consistency_check(circuit, Localized(1, [u1]), mode="probabilistic", trials=4)
    assert sampled.verdict == Verdict.INCONSISTENT
    assert consistency_check(circuit, AffineSpace(1)).consistent


def test_consistency_of_a_difference_divisor():
    circuit = divide_by_param_difference()
    u1, u2 = SparsePoly.variable(2, 0), SparsePoly.variable(2, 1)
    assert consistency_check(circuit, AffineSpace(2)).consistent
    assert consistency_check(circuit, Localized(2, [u1 - u2])).verdict == Verdict.INCONSISTENT
    assert consistency_check(circuit, PointDomain([1, 2])).consistent


def test_reducible_domain_is_never_certified_exactly():
    builder = CircuitBuilder(2, 1)
    out = builder.div(builder.input(1), builder.param(1))
    circuit = builder.build([out])
    u1, u2 = SparsePoly.variable(2, 0), SparsePoly.variable(2, 1)
    cross = Localized(2, [u1 * u2])
    assert cross.chart() is None
    result = consistency_check(circuit, cross, trials=16, seed=4)
    assert result.mode == "probabilistic"
    assert result.verdict in (Verdict.UNDECIDED, Verdict.INCONSISTENT)
    assert result.node == out


def test_division_free_circuits_are_always_consistent():
    u = SparsePoly.variable(4, 0)
    result = consistency_check(build_H(3), Localized(4, [u]))
    assert result.consistent and result.detail == "totally division-free"


def test_fingerprints_of_equal_and_different_polynomials():
    builder = CircuitBuilder(0, 2)
    x1, x2 = builder.input(1), builder.input(2)
    s = builder.add(x1, x2)
    squared = builder.build([builder.mul(s, s)])

    builder = CircuitBuilder(0, 2)
    x1, x2 = builder.input(1), builder.input(2)
    cross = builder.mul(builder.scalar(2), builder.mul(x1, x2))
    expanded = builder.build([builder.add(builder.add(builder.mul(x1, x1), cross), builder.mul(x2, x2))])
    assert equal_results(fingerprint(squared, 4), fingerprint(expanded, 4))

    first = CircuitBuilder(0, 2)
    first_circuit = first.build([first.input(1)])
    second = CircuitBuilder(0, 2)
    second_circuit = second.build([second.input(2)])
    assert not equal_results(fingerprint(first_circuit, 4), fingerprint(second_circuit, 4))


def test_fingerprints_from_different_seeds_do_not_compare():
    circuit = square_plus_param()
    with pytest.raises(FingerprintMismatch):
        equal_results(fingerprint(circuit, 1), fingerprint(circuit, 2))


def test_fingerprint_is_deterministic():
    circuit = build_H(2)
    a, b = fingerprint(circuit, 9), fingerprint(circuit, 9)
    assert a.results == b.results and a.points == b.points


def test_split_random_streams():
    root = SplitRandom(5)
    assert root.child(1, 2).rng().random() == SplitRandom(5, (1, 2)).rng().random()
    assert root.child(1).rng().random() != root.child(2).rng().random()


def test_node_value_table_nominates_equal_nodes():
    builder = CircuitBuilder(0, 1)
    x = builder.input(1)
    a = builder.add(x, x)
    b = builder.mul(builder.scalar(2), x)
    table = node_value_table(builder.build([a, b]), seed=3, k=5)
    assert table[a] == table[b]
