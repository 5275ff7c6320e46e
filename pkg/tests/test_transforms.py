#!filepath: tests/test_transforms.py
import random
from fractions import Fraction

import pytest

from algebra.errors import ArityMismatch
from algebra.sparse_poly import SparsePoly
from circuit_ir import AffineSpace, CircuitBuilder, Localized, PointDomain, random_circuit, validate
from cost_model import cost
from family.builders import build_H
from semantics import FingerprintExhausted, equal_results, eval_point, fingerprint
from transforms import (InconsistentJoin, JoinSpec, RewriteChangedResults, broadcast, garbage_collect, join, reduce,
                        reduce_circuit, restrict)

from conftest import divide_by_param_difference


def one_input(body):
    builder = CircuitBuilder(0, 1)
    out = body(builder, builder.input(1))
    return builder.build([out])


def test_join_feeds_outputs_into_inputs():
    square = one_input(lambda b, x: b.mul(x, x))
    plus_one = one_input(lambda b, y: b.add(y, b.scalar(1)))
    joined = join(square, plus_one)
    assert joined.inputs == 1 and joined.params == 0
    assert eval_point(joined, [], [3]).outputs == (Fraction(10),)
    assert validate(joined).valid


def test_join_with_explicit_map_swaps_inputs():
    builder = CircuitBuilder(0, 2)
    x1, x2 = builder.input(1), builder.input(2)
    pair = builder.build([x1, builder.mul(x2, x2)])
    builder = CircuitBuilder(0, 2)
    difference = builder.build([builder.sub(builder.input(1), builder.input(2))])
    joined = join(pair, difference, JoinSpec.parse("0:1,1:0"))
    # output 0 (x1) feeds Y2, output 1 (x2^2) feeds Y1
    assert eval_point(joined, [], [5, 3]).outputs == (Fraction(4),)


def test_join_rejects_mismatched_arity():
    square = one_input(lambda b, x: b.mul(x, x))
    builder = CircuitBuilder(0, 2)
    two_inputs = builder.build([builder.add(builder.input(1), builder.input(2))])
    with pytest.raises(ArityMismatch):
        join(square, two_inputs)
    with pytest.raises(ValueError):
        JoinSpec.parse("0:0,0:1")


def test_join_onto_a_zero_function_is_inconsistent():
    zero = one_input(lambda b, x: b.sub(x, x))
    reciprocal = one_input(lambda b, y: b.div(b.scalar(1), y))
    with pytest.raises(InconsistentJoin) as info:
        join(zero, reciprocal)
    assert info.value.circuit is not None


def test_reduce_merges_commuted_duplicates():
    builder = CircuitBuilder(0, 2)
    x1, x2 = builder.input(1), builder.input(2)
    a, b = builder.add(x1, x2), builder.add(x2, x1)
    circuit = builder.build([builder.mul(a, b)])
    report = reduce_circuit(circuit)
    assert report.circuit.size == circuit.size - 1
    assert report.removed >= 1
    assert equal_results(fingerprint(circuit, 2), fingerprint(report.circuit, 2))
    again = reduce(report.circuit)
    assert again.size == report.circuit.size


def test_reduce_merges_semantically_equal_nodes():
    builder = CircuitBuilder(0, 1)
    x = builder.input(1)
    doubled = builder.add(x, x)
    scaled = builder.mul(builder.scalar(2), x)
    circuit = builder.build([doubled, scaled])
    for oracle in ("fingerprint", "exact"):
        reduced = reduce(circuit, oracle=oracle)
        assert reduced.outputs[0] == reduced.outputs[1]
        assert len(reduced.outputs) == 2
        assert reduced.size < circuit.size


def test_reduce_recovers_the_minimal_h_evaluator():
    for n in range(1, 6):
        twice = build_H(n, duplicate_factor_chain=True)
        reduced = reduce(twice)
        assert cost(reduced).essential_mults == n - 1
        assert reduced.size <= twice.size
        assert equal_results(fingerprint(twice, 1), fingerprint(reduced, 1))


def test_reduce_rejects_unknown_oracle():
    with pytest.raises(ValueError):
        reduce(build_H(1), oracle="guess")


def test_broadcast_with_a_valid_identity():
    builder = CircuitBuilder(0, 2)
    s = builder.add(builder.input(1), builder.input(2))
    circuit = builder.build([builder.mul(s, s)])
    template = one_input(lambda b, y: b.mul(b.add(y, y), b.scalar(Fraction(1, 2))))
    rewritten = broadcast(circuit, [s], template)
    assert rewritten.size > circuit.size
    assert eval_point(rewritten, [], [2, 5]).outputs == (Fraction(49),)


def test_broadcast_refuses_a_template_that_changes_results():
    builder = CircuitBuilder(0, 1)
    x = builder.input(1)
    circuit = builder.build([builder.mul(x, x)])
    shift = one_input(lambda b, y: b.add(y, b.scalar(1)))
    with pytest.raises(RewriteChangedResults):
        broadcast(circuit, [x], shift)


def test_restrict_division_by_parameter_to_its_zero_set():
    builder = CircuitBuilder(1, 1)
    div = builder.div(builder.input(1), builder.param(1))
    circuit = builder.build([div])
    u1 = SparsePoly.variable(1, 0)
    result = restrict(circuit, Localized(1, [u1]))
    assert not result.consistent
    assert result.approx_candidates == [div]
    assert result.circuit is circuit


def test_restrict_to_points():
    circuit = divide_by_param_difference()
    assert restrict(circuit, PointDomain([1, 2]), domain=AffineSpace(2)).membership_ok is True
    assert restrict(circuit, PointDomain([1, 2])).consistent
    on_diagonal = restrict(circuit, PointDomain([3, 3]), mode="probabilistic")
    assert not on_diagonal.consistent
    with pytest.raises(ArityMismatch):
        restrict(circuit, PointDomain([1]))


def test_restrict_checks_membership_in_the_parent_domain():
    circuit = divide_by_param_difference()
    u1 = SparsePoly.variable(2, 0)
    result = restrict(circuit, PointDomain([1, 2]), domain=Localized(2, [u1]))
    assert result.membership_ok is False


def test_garbage_collection_is_idempotent():
    builder = CircuitBuilder(0, 1)
    x = builder.input(1)
    unused = builder.add(x, x)
    out = builder.mul(x, x)
    circuit = builder.build([out])
    collected = garbage_collect(circuit)
    assert not collected.has_node(unused)
    assert collected.size == 2 and collected.outputs == (out,)
    assert garbage_collect(collected) == collected


def test_rewrites_preserve_results_on_random_circuits(random_circuits):
    for circuit in random_circuits(25, seed=4):
        try:
            reference = fingerprint(circuit, 6)
            for rewritten in (reduce(circuit, seed=6), garbage_collect(circuit)):
                assert rewritten.size <= circuit.size
                assert validate(rewritten).valid
                assert equal_results(reference, fingerprint(rewritten, 6))
        except FingerprintExhausted:
            continue


def shifted_quotient():
    """((x + u1) * (u1 + x)) / (u1 - u2), with a commuted duplicate for reduction to merge."""
    builder = CircuitBuilder(2, 1)
    x, u1, u2 = builder.input(1), builder.param(1), builder.param(2)
    product = builder.mul(builder.add(x, u1), builder.add(u1, x))
    return builder.build([builder.div(product, builder.sub(u1, u2))])


def test_reduce_commutes_with_restrict():
    circuit = shifted_quotient()
    u1, u2 = SparsePoly.variable(2, 0), SparsePoly.variable(2, 1)
    for sub in (Localized(2, [u1 - u2 - 2]), PointDomain([5, 3])):
        restricted_then_reduced = reduce(restrict(circuit, sub).circuit, domain=sub)
        reduced_then_restricted = restrict(reduce(circuit), sub)
        assert reduced_then_restricted.consistent
        assert restrict(restricted_then_reduced, sub).consistent
        assert equal_results(fingerprint(restricted_then_reduced, 3, domain=sub),
                             fingerprint(reduced_then_restricted.circuit, 3, domain=sub))


def test_join_composition_law_on_random_pairs():
    checked = 0
    for seed in range(30):
        r = random.Random(seed)
        params = r.randint(0, 2)
        g1 = random_circuit(r, params, r.randint(1, 2), r.randint(5, 25))
        g2 = random_circuit(r, params, len(g1.outputs), r.randint(5, 25))
        joined = join(g1, g2, check_consistency=False)
        assert validate(joined).valid
        u = [Fraction(r.randint(1, 20)) for _ in range(params)]
        x = [Fraction(r.randint(1, 20)) for _ in range(g1.inputs)]
        inner = eval_point(g1, u, x, raise_on_failure=False)
        if inner.outputs is None:
            continue
        outer = eval_point(g2, u, list(inner.outputs), raise_on_failure=False)
        if outer.outputs is None:
            continue
        assert eval_point(joined, u, x).outputs == outer.outputs
        checked += 1
    assert checked >= 20
