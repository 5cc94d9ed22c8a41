"""CLI contract: commands, exit codes, JSON schema, determinism."""

import io
import json
import os

import pytest

from ambiskew.cli import main

DATA = os.path.join(os.path.dirname(__file__), "data")


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def spec(name):
    return os.path.join(DATA, name)


def test_check_weyl_json():
    code, out, err = run(["check", spec("weyl.spec"), "--json", "--trials", "2"])
    assert code == 0, err
    payload = json.loads(out)
    assert payload["verdict"] == "smooth"
    assert payload["route"] == "cor37"
    assert payload["dimension"] == 2
    assert payload["calculus_verified"] is True


def test_report_schema_keys():
    code, out, _ = run(["check", spec("weyl.spec"), "--json", "--trials", "2"])
    payload = json.loads(out)
    assert list(payload) == [
        "name", "route", "base", "conditions", "verdict", "dimension",
        "calculus_verified", "meta",
    ]
    assert list(payload["base"]) == ["kind", "n"]
    assert payload["base"] == {"kind": "split", "n": 1}
    for cond in payload["conditions"]:
        assert list(cond) == ["id", "status", "witness"]
    assert list(payload["meta"]) == ["version", "seed", "max_degree", "trials"]
    assert payload["conditions"], "every report carries at least one condition"


def test_check_reports_are_byte_identical():
    args = ["check", spec("qaffine1.spec"), "--json", "--trials", "2", "--seed", "7"]
    first = run(args)
    second = run(args)
    assert first == second
    payload = json.loads(first[1])
    assert payload["meta"]["seed"] == 7
    assert payload["verdict"] == "smooth"
    assert payload["dimension"] == 3  # one base variable: calculus dimension 3


def test_nf_quantum_plane():
    code, out, _ = run(["nf", spec("qplane.spec"), "--expr", "y*x"])
    assert code == 0
    assert out == "q^-1 * x*y\n"


def test_nf_weyl():
    code, out, _ = run(["nf", spec("weyl.spec"), "--expr", "y*x"])
    assert code == 0
    assert out == "x*y + 1\n"


def test_d_command():
    code, out, _ = run(["d", spec("weyl.spec"), "--expr", "x*y"])
    assert code == 0
    assert out == "dx * y + dy * x\n"


def test_wedge_command():
    code, out, _ = run(["wedge", spec("qplane.spec"), "--forms", "dy", "dx"])
    assert code == 0
    assert "dx^^dy" in out


def test_calculus_verify():
    code, out, _ = run(["calculus-verify", spec("qaffine1.spec"), "--trials", "1"])
    assert code == 0
    assert "degree 0" in out and "degree 3" in out


def test_catalog_list():
    code, out, _ = run(["catalog", "list"])
    assert code == 0
    assert "weyl" in out and "downup-case1" in out


def test_catalog_run_smooth():
    code, out, _ = run(["catalog", "run", "weyl", "--trials", "2"])
    assert code == 0
    assert "smooth" in out


def test_catalog_run_downup_case1():
    code, out, _ = run([
        "catalog", "run", "downup-case1",
        "--param", "mu1=2", "--param", "mu2=3", "--param", "gamma=1",
        "--json", "--trials", "2",
    ])
    assert code == 2
    payload = json.loads(out)
    assert payload["verdict"] == "inconclusive"
    failing = [c["id"] for c in payload["conditions"] if c["status"] == "fail"]
    assert failing == ["2"]
    assert payload["conditions"][1]["witness"]  # down-up witness text present


def test_exit_code_usage_errors():
    assert run(["frobnicate"])[0] == 1
    assert run([])[0] == 1
    assert run(["check"])[0] == 1
    code, _, err = run(["check", spec("missing.spec")])
    assert code == 1
    assert "error:" in err


def test_exit_code_parse_errors():
    code, _, err = run(["nf", spec("weyl.spec"), "--expr", "1 + * 2"])
    assert code == 1
    assert "error:" in err
    code, _, err = run(["nf", spec("weyl.spec"), "--expr", "nope"])
    assert code == 1


def test_catalog_bad_param():
    code, _, err = run(["catalog", "run", "weyl", "--param", "q=1"])
    assert code == 1
    code, _, err = run(["catalog", "run", "downup-case2", "--param", "beta=-1"])
    assert code == 1


def test_help_exits_zero():
    assert run(["--help"])[0] == 0
