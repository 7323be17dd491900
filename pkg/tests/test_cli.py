import json

import pytest

from dpderham.cli import run


def run_cli(capsys, argv, stdin_obj=None, monkeypatch=None):
    import io
    import sys

    if stdin_obj is not None:
        sys.stdin = io.StringIO(json.dumps(stdin_obj))
    try:
        code = run(argv)
    finally:
        sys.stdin = sys.__stdin__
    out, err = capsys.readouterr()
    return code, out, err


def test_int_definite_power_rule(capsys):
    payload = {
        "f": {"n": 1, "terms": [{"exps": [0, 2], "coef": "1"}]},
        "i": 1,
        "lo": "0",
        "hi": "theta",
    }
    code, out, _ = run_cli(capsys, ["int", "definite", "--input", "-"], payload)
    assert code == 0
    result = json.loads(out)
    assert result["terms"] == [{"exps": [3, 0], "coef": "1"}]


def test_dp_mul_zero_operand(capsys):
    payload = {
        "f": {"n": 1, "terms": []},
        "g": {"n": 1, "terms": [{"exps": [0, 1], "coef": "2"}]},
    }
    code, out, _ = run_cli(capsys, ["dp", "mul", "--input", "-"], payload)
    assert code == 0
    assert json.loads(out)["terms"] == []


def test_form_d_round_trip(capsys):
    payload = {
        "omega": {
            "dim": 2,
            "terms": [{"dxs": [], "poly": {"n": 2, "terms": [{"exps": [0, 2, 0], "coef": "1"}]}}],
        }
    }
    code, out, _ = run_cli(capsys, ["form", "d", "--input", "-"], payload)
    assert code == 0
    result = json.loads(out)
    assert result["terms"][0]["dxs"] == [1]


def test_sset_info(capsys):
    code, out, _ = run_cli(capsys, ["sset", "info", "boundary:2"])
    assert code == 0
    info = json.loads(out)
    assert info["max_dim"] == 1
    assert info["counts"]["0"] == 3
    assert info["counts"]["1"] == 3


def test_malformed_input_exits_2(capsys):
    import io
    import sys

    sys.stdin = io.StringIO("this is not json")
    try:
        code = run(["dp", "mul", "--input", "-"])
    finally:
        sys.stdin = sys.__stdin__
    out, err = capsys.readouterr()
    assert code == 2
    assert "error" in json.loads(err)


def test_verify_report_deterministic(capsys):
    argv = ["verify", "stokes", "--space", "simplex:1", "--r", "1", "--seed", "7", "--trials", "3"]
    code1, out1, _ = run_cli(capsys, argv)
    code2, out2, _ = run_cli(capsys, argv)
    assert code1 == code2 == 0
    r1, r2 = json.loads(out1), json.loads(out2)
    r1.pop("wall_time_ms", None)
    r2.pop("wall_time_ms", None)
    assert r1 == r2
    assert r1["failures"] == []


def test_verify_unknown_space_exits_2(capsys):
    code, _, err = run_cli(capsys, ["verify", "stokes", "--space", "moebius", "--trials", "1"])
    assert code == 2
