#!filepath: tests/test_approx.py
import json
from fractions import Fraction

import pytest

from algebra import PrecisionExhausted, SparsePoly
from approx import (ApproxInstance, CoefficientCloud, EmptyCloud, InstanceViolation, NonParameterDivision,
                    NotHolomorphic, approx_eval, cloud_membership, constant_germ, convergence_witness, epsilon_germ,
                    linear_tail_circuit, linear_tail_germ, load_germ, parse_germ, pole_circuit, represents,
                    sample_cloud, shifted_germ, square_limit_circuit)
from approx.evaluate import eval_in_x
from circuit_ir import CircuitBuilder, Op
from semantics import eval_point
from transforms import garbage_collect, reduce

from conftest import square_plus_param, write_json

X = SparsePoly.variable(1, 0)

DIAGONAL = {"kind": "localized", "params": 2,
            "generators": [{"vars": ["u1", "u2"], "terms": [{"exp": [1, 0], "coef": "1"},
                                                             {"exp": [0, 1], "coef": "-1"}]}]}


def test_square_limit_has_no_tail():
    result = approx_eval(square_limit_circuit(), epsilon_germ())
    assert result.holomorphic
    assert result.limit == (X * X,)
    assert all(series.is_zero_like() for series in result.tail)
    assert represents(square_limit_circuit(), shifted_germ()) == (X * X,)


def test_linear_tail_witness():
    table = convergence_witness(linear_tail_circuit(), linear_tail_germ(), 10)
    assert table.limit == ["x1^2"]
    assert len(table.rows) == 10 and all(row.ok for row in table.rows)
    assert table.ratios == ["1/2"] * 9
    assert table.C == "1"
    assert table.rows[0].deviation == "1/2"


def test_constant_germ_gives_a_single_row():
    table = convergence_witness(square_limit_circuit(), constant_germ([3]), 10)
    assert len(table.rows) == 1
    assert table.rows[0].deviation == "0"
    assert table.C == "0"


def test_pole_is_reported_with_its_origin():
    circuit = pole_circuit()
    with pytest.raises(NotHolomorphic) as info:
        represents(circuit, epsilon_germ())
    assert info.value.order == -1
    assert info.value.node == circuit.outputs[0]
    division = next(node.id for node in circuit.nodes if node.op == Op.DIV)
    assert info.value.first_pole_node == division
    assert not approx_eval(circuit, epsilon_germ()).holomorphic


def test_divisions_must_be_parameter_nodes():
    builder = CircuitBuilder(1, 1)
    out = builder.div(builder.param(1), builder.input(1))
    with pytest.raises(NonParameterDivision) as info:
        approx_eval(builder.build([out]), epsilon_germ())
    assert info.value.node == out


def test_divisor_vanishing_along_the_germ():
    builder = CircuitBuilder(1, 1)
    p = builder.param(1)
    out = builder.mul(builder.div(builder.scalar(1), builder.sub(p, p)), builder.input(1))
    with pytest.raises(PrecisionExhausted):
        approx_eval(builder.build([out]), epsilon_germ())


def test_eval_in_x_at_parameter_points():
    assert eval_in_x(pole_circuit(), [Fraction(1, 2)]) == [X.scale(2)]
    assert eval_in_x(pole_circuit(), [0]) is None


def test_germ_files(tmp_path):
    write_json(tmp_path, "d.json", json.dumps(DIAGONAL))
    path = write_json(tmp_path, "germ.json", json.dumps({
        "entries": [{"order": 1, "coeffs": ["1"]}, {"order": 1, "coeffs": ["1"]}],
        "domain": "d.json", "precision": 6}))
    germ = load_germ(path)
    assert germ.params == 2 and germ.precision == 6
    assert germ.domain.kind == "localized"
    germ.check()
    assert approx_eval(linear_tail_circuit(), germ).limit == (X * X,)
    assert load_germ(path, precision=3).precision == 3


def test_germ_off_the_domain_is_rejected():
    germ = parse_germ(json.dumps({"entries": [{"order": 1, "coeffs": ["1"]}, {"order": 1, "coeffs": ["2"]}],
                                  "domain": DIAGONAL}))
    with pytest.raises(InstanceViolation):
        approx_eval(linear_tail_circuit(), germ)
    assert approx_eval(linear_tail_circuit(), germ, check=False).limit == (X.scale(Fraction(1, 2)) * X,)


def test_cloud_membership():
    cloud = sample_cloud(square_plus_param(), size=20, seed=1)
    assert cloud.arity == 2 and len(cloud.points) == 20
    report = cloud_membership(cloud, cloud.points[3])
    assert report.exact_member and report.distance == 0.0
    assert cloud.points[report.nearest] == cloud.points[3]

    u1 = cloud.samples[0][0]
    near = cloud_membership(cloud, [X * X + (u1 + Fraction(1, 2))], radius=1.0)
    assert not near.exact_member
    assert near.distance <= 0.5 and near.within_radius

    outside = cloud_membership(cloud, [X * X + X + u1])
    assert outside.distance >= 1.0


def test_empty_cloud():
    with pytest.raises(EmptyCloud):
        cloud_membership(CoefficientCloud(1, 1, (), (), (), 0), [Fraction(1)])


def quotient_by_parameter():
    """x1^2 / u1 + u1, with a commuted duplicate and an unused node."""
    builder = CircuitBuilder(1, 1)
    p, x = builder.param(1), builder.input(1)
    square = builder.mul(x, x)
    builder.mul(x, builder.scalar(7))
    quotient = builder.mul(square, builder.div(builder.scalar(1), p))
    twice = builder.add(builder.add(quotient, p), builder.add(p, quotient))
    return builder.build([builder.mul(twice, builder.scalar(Fraction(1, 2)))])


def test_approx_eval_at_a_constant_term_matches_eval_point():
    germ = ApproxInstance.from_coefficients([(0, [Fraction(3), Fraction(1)])])
    for circuit in (quotient_by_parameter(), square_plus_param()):
        limit = approx_eval(circuit, germ).limit
        for x in (0, 2, -5):
            assert limit[0].evaluate([x]) == eval_point(circuit, [3], [x]).outputs[0]
    assert approx_eval(quotient_by_parameter(), germ).limit == ((X * X).scale(Fraction(1, 3)) + 3,)


def test_represents_is_unchanged_by_reduce_and_gc():
    circuit = quotient_by_parameter()
    germ = ApproxInstance.from_coefficients([(0, [Fraction(2), Fraction(1)])])
    expected = represents(circuit, germ)
    reduced = reduce(circuit)
    collected = garbage_collect(circuit)
    assert reduced.size < circuit.size and collected.size < circuit.size
    assert represents(reduced, germ) == expected
    assert represents(collected, germ) == expected
    tail = linear_tail_circuit()
    assert represents(reduce(tail), linear_tail_germ()) == represents(tail, linear_tail_germ()) == (X * X,)


def test_output_known_only_below_eps_zero_has_no_limit():
    builder = CircuitBuilder(1, 1)
    p, x = builder.param(1), builder.input(1)
    vanishing = builder.sub(x, x)
    out = builder.mul(vanishing, builder.div(builder.scalar(1), builder.mul(p, p)))
    circuit = builder.build([out])
    result = approx_eval(circuit, epsilon_germ(precision=2))
    assert result.holomorphic and result.limit is None
    with pytest.raises(PrecisionExhausted):
        represents(circuit, epsilon_germ(precision=2))
