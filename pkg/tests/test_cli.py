#!filepath: tests/test_cli.py
import json

from approx import square_limit_circuit
from circuit_ir import CircuitBuilder, load_circuit, save_circuit
from family.builders import build_H
from family.identification import identification_points
from lowerbound import xi_evaluator
from main import dispatch

from conftest import divide_by_param_difference, write_json


def saved(tmp_path, name, circuit):
    path = tmp_path / name
    save_circuit(circuit, path)
    return str(path)


def run_json(capsys, argv):
    code = dispatch(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_verify_identity_passes(capsys):
    assert dispatch(["family", "verify-identity", "--n", "4", "--trials", "20", "--seed", "1"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_rank_certificate_report(capsys):
    code, payload = run_json(capsys, ["lb", "rank-cert", "--n", "5"])
    assert code == 0
    assert payload["rank"] == 32 and payload["pass"] is True
    assert payload["manifest"]["command"][:2] == ["lb", "rank-cert"]


def test_rank_certificate_above_the_ceiling_fails(capsys):
    assert dispatch(["lb", "rank-cert", "--n", "3", "--ceiling", "2"]) == 1
    assert "CeilingExceeded" in capsys.readouterr().err


def test_usage_errors_exit_with_two(tmp_path, capsys):
    assert dispatch(["validate", "--no-such-flag", "x.json"]) == 2
    assert dispatch(["validate", str(tmp_path / "missing.json")]) == 2
    path = saved(tmp_path, "h.json", build_H(2))
    assert dispatch(["gc", path, "-o", path]) == 2
    assert dispatch(["eval", path, "--params", "0.5,1,1", "--inputs", "1,1"]) == 2
    assert dispatch(["repro", "nonexistent"]) == 2


def test_validate_and_eval(tmp_path, capsys):
    path = saved(tmp_path, "h.json", build_H(2))
    assert dispatch(["validate", path]) == 0
    code, payload = run_json(capsys, ["eval", path, "--params", "1,1,1", "--inputs", "1,1"])
    assert code == 0 and payload["outputs"] == ["4"]


def test_division_by_zero_is_a_library_error(tmp_path, capsys):
    path = saved(tmp_path, "q.json", divide_by_param_difference())
    assert dispatch(["eval", path, "--params", "2,2", "--inputs", "1"]) == 1
    assert "DivisionByZero" in capsys.readouterr().err


def test_consistency_verdicts(tmp_path, capsys):
    path = saved(tmp_path, "q.json", divide_by_param_difference())
    assert dispatch(["consistent", path]) == 0
    code, payload = run_json(capsys, ["consistent", path, "--point", "3,3"])
    assert code == 1 and payload["verdict"] == "inconsistent"


def test_reduce_writes_the_reduced_circuit(tmp_path, capsys):
    source = saved(tmp_path, "twice.json", build_H(3, duplicate_factor_chain=True))
    target = tmp_path / "reduced.json"
    code, payload = run_json(capsys, ["reduce", source, "-o", str(target)])
    assert code == 0
    assert payload["node_count"] < payload["node_count_before"]
    assert load_circuit(target).size == payload["node_count"]


def test_cost_digest_is_deterministic(tmp_path, capsys):
    path = saved(tmp_path, "h.json", build_H(4))
    _, first = run_json(capsys, ["cost", path])
    _, second = run_json(capsys, ["cost", path])
    assert first["essential_mults"] == 3
    assert first["manifest"]["result_digest"] == second["manifest"]["result_digest"]
    assert first["manifest"]["inputs"][0]["path"] == path


def test_approx_eval_of_the_square_limit(tmp_path, capsys):
    circuit = saved(tmp_path, "square.json", square_limit_circuit())
    germ = write_json(tmp_path, "germ.json", json.dumps({"entries": [{"order": 1, "coeffs": ["1"]}]}))
    code, payload = run_json(capsys, ["approx", "eval", circuit, "--germ", germ])
    assert code == 0
    assert payload["limit"] == ["x1^2"] and payload["tail_zero"] == [True]


def test_universal_size(capsys):
    code, payload = run_json(capsys, ["family", "universal-size", "--L", "0", "--n", "3"])
    assert code == 0 and payload["point_count"] == 66


def test_approx_eval_below_eps_zero_precision_exits_with_one(tmp_path, capsys):
    builder = CircuitBuilder(1, 1)
    p, x = builder.param(1), builder.input(1)
    vanishing = builder.mul(builder.sub(x, x), builder.div(builder.scalar(1), builder.mul(p, p)))
    circuit = saved(tmp_path, "vanishing.json", builder.build([vanishing]))
    germ = write_json(tmp_path, "germ.json", json.dumps({"entries": [{"order": 1, "coeffs": ["1"]}]}))
    assert dispatch(["approx", "eval", circuit, "--germ", germ, "--prec", "2"]) == 1
    assert "PrecisionExhausted" in capsys.readouterr().err


def test_unexpected_errors_are_logged_and_exit_with_one(tmp_path, capsys, caplog, monkeypatch):
    import main

    def broken(*args, **kwargs):
        raise RuntimeError("evaluator crashed")

    monkeypatch.setattr(main, "eval_point", broken)
    path = saved(tmp_path, "h.json", build_H(2))
    assert dispatch(["eval", path, "--params", "1,1,1", "--inputs", "1,1"]) == 1
    assert "RuntimeError: evaluator crashed" in capsys.readouterr().err
    assert any(record.exc_info for record in caplog.records)


def test_audit_defaults_to_the_xi_chart(tmp_path, capsys):
    path = saved(tmp_path, "xi.json", xi_evaluator(1, identification_points(1, 4)))
    code, payload = run_json(capsys, ["lb", "audit", path, "--n", "1", "--seed", "4"])
    assert code == 0
    assert payload["chart"] == "xi" and payload["verdict"] == "consistent_with_bound" and payload["m"] == 2
