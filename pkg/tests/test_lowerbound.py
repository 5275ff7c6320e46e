#!filepath: tests/test_lowerbound.py
from fractions import Fraction

import pytest

from circuit_ir import CircuitBuilder
from family import CeilingExceeded, Xi, identification_points, point_count, roots
from lowerbound import (XI_FORMS, AuditVerdict, LowerBoundSettings, audit_candidate, chart_arity, jet_matrix,
                        naive_evaluator, rank_certificate, root_weights, xi_evaluator)
from lowerbound.certificate import prime_points

from conftest import square_plus_param


def preimage_eliminant(params: int, t_index: int, u_index: int, power: int = 1):
    """(Y - T)(Y - 1 - T*U) for n = 1, raised to `power`."""
    builder = CircuitBuilder(params, 1)
    y, t, u = builder.input(1), builder.param(t_index), builder.param(u_index)
    first = builder.sub(y, t)
    second = builder.sub(builder.sub(y, builder.scalar(1)), builder.mul(t, u))
    return builder.build([builder.power(builder.mul(first, second), power)])


def test_jet_matrix_for_n_equal_one():
    certificate = rank_certificate(1, points=[[0], [1]])
    assert certificate.matrix == [["-1", "1"], ["-2", "1"]]
    assert certificate.lam == ["-1", "0"]
    assert certificate.rank == 2 and certificate.passed


@pytest.mark.parametrize("n", range(1, 5))
def test_prime_points_give_full_rank(n):
    certificate = rank_certificate(n, "primes")
    assert certificate.rank == 2 ** n
    assert certificate.attempts == 1
    assert len(certificate.points) == 2 ** n
    payload = certificate.to_json_dict()
    assert payload["pass"] is True and "passed" not in payload


def test_random_points_give_full_rank():
    certificate = rank_certificate(3, "random", seed=5)
    assert certificate.passed and certificate.rank == 8


def test_deficient_points_are_replaced():
    certificate = rank_certificate(1, points=[[0], [0]])
    assert certificate.passed
    assert certificate.attempts == 2
    assert certificate.points == [["2"], ["3"]]


def test_prime_points_use_two_primes_per_coordinate():
    assert prime_points(2) == [(2, 5), (3, 5), (2, 7), (3, 7)]
    lam, matrix = jet_matrix(1, prime_points(1))
    assert lam == (-1, 0)
    assert matrix == [[-3, 1], [-4, 1]]


def test_certificate_ceiling_and_arguments():
    settings = LowerBoundSettings()
    settings.ceiling_n = 2
    with pytest.raises(CeilingExceeded):
        rank_certificate(3, settings=settings)
    with pytest.raises(ValueError):
        rank_certificate(1, strategy="grid")
    with pytest.raises(ValueError):
        rank_certificate(1, points=[[0]])


@pytest.mark.parametrize("n", range(1, 4))
def test_naive_evaluators_are_consistent_with_the_bound(n):
    for form in ("powers", "horner"):
        report = audit_candidate(naive_evaluator(n, form), n, chart="coefficients", seed=2)
        assert report.verdict == AuditVerdict.CONSISTENT_WITH_BOUND
        assert report.m == 2 ** n == report.bound
        assert report.verified + report.skipped == report.trials


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("form", XI_FORMS)
def test_xi_evaluators_are_consistent_with_the_bound(n, form):
    circuit = xi_evaluator(n, identification_points(n, 3), form)
    assert circuit.params == point_count(n)
    report = audit_candidate(circuit, n, seed=3)
    assert report.chart == "xi"
    assert report.verdict == AuditVerdict.CONSISTENT_WITH_BOUND
    assert report.m == 2 ** n
    assert report.essential_mults == 2 ** n - 1
    assert report.verified == report.trials


def test_root_weights_recover_the_roots_from_xi_values():
    points = identification_points(2, 0)
    rows, weights = root_weights(2, points)
    assert len(rows) == 4
    t, u = Fraction(3), (Fraction(2), Fraction(-5))
    values = Xi(2, points, t, u)
    recovered = [sum(w * values[rows[k]] for k, w in enumerate(row)) for row in weights]
    assert recovered == roots(2, t, u)


def test_xi_evaluator_needs_separating_points():
    with pytest.raises(ValueError):
        xi_evaluator(1, [(Fraction(1),)] * point_count(1))
    with pytest.raises(ValueError):
        xi_evaluator(1, identification_points(1)[:3])


def test_xi_evaluator_for_other_points_is_not_an_evaluator():
    report = audit_candidate(xi_evaluator(1, identification_points(1, 1)), 1, seed=2)
    assert report.verdict == AuditVerdict.NOT_AN_EVALUATOR
    assert audit_candidate(naive_evaluator(1), 1).verdict == AuditVerdict.NOT_AN_EVALUATOR


def test_preimage_and_family_charts():
    assert chart_arity("preimage", 2) == 3 and chart_arity("family", 2) == 5 and chart_arity("xi", 1) == 18
    report = audit_candidate(preimage_eliminant(2, 1, 2), 1, chart="preimage")
    assert report.verdict == AuditVerdict.CONSISTENT_WITH_BOUND and report.m == 2
    squared = audit_candidate(preimage_eliminant(3, 2, 3, power=2), 1, chart="family")
    assert squared.verdict == AuditVerdict.CONSISTENT_WITH_BOUND
    assert squared.power == 2


def test_wrong_shape_or_wrong_function_is_not_an_evaluator():
    assert audit_candidate(square_plus_param(), 1).verdict == AuditVerdict.NOT_AN_EVALUATOR
    wrong = audit_candidate(naive_evaluator(1), 1, chart="preimage")
    assert wrong.verdict == AuditVerdict.NOT_AN_EVALUATOR
    assert wrong.failing_trial is not None


def test_division_by_the_input_is_refused():
    builder = CircuitBuilder(2, 1)
    y = builder.input(1)
    out = builder.add(builder.div(builder.mul(y, builder.mul(y, y)), y), builder.param(1))
    report = audit_candidate(builder.build([builder.add(out, builder.param(2))]), 1, chart="coefficients")
    assert report.verdict == AuditVerdict.NOT_ESSENTIALLY_DIVISION_FREE


def test_verified_candidate_below_the_bound_is_a_violation(monkeypatch):
    import lowerbound.audit as audit

    real_cost = audit.cost
    monkeypatch.setattr(audit, "cost", lambda c: real_cost(c).model_copy(update={"essential_param_count": 1}))
    report = audit_candidate(naive_evaluator(1), 1, chart="coefficients")
    assert report.verdict == AuditVerdict.VIOLATION
    assert report.m == 1
