import io
import json
import subprocess
import sys

import jsonschema
import pytest

from qrr.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from qrr.corpus import builders as B
from qrr.corpus.appell_lerch import AppellLerchSpec, appell_lerch_eval, mono_term
from qrr.corpus.registry import ENV_ORDER, REGISTRY, IdentityRecord
from qrr.qfunctions import mono
from qrr.report import REPORT_SCHEMA


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def report_of(text):
    data = json.loads(text)
    jsonschema.validate(data, REPORT_SCHEMA)
    return data


@pytest.fixture
def broken(monkeypatch):
    """Two extra records: a wrong sign (fails) and a singular sum (errors)."""
    singular = AppellLerchSpec(level=1, a=mono(1, 0), b=mono_term(1, 0))
    monkeypatch.setitem(REGISTRY, "broken-sign", IdentityRecord(
        "broken-sign", lambda o: B.cor76b_lhs(o, c=1), B.cor76b_rhs, "sign flipped", 30))
    monkeypatch.setitem(REGISTRY, "broken-pole", IdentityRecord(
        "broken-pole", lambda o: appell_lerch_eval(singular, o), B.dyson_rhs, "pole at n = 0", 30))


def test_verify_pass_json():
    code, out = run("verify", "--id", "dyson-1.1", "--order", "50")
    assert code == EXIT_OK
    data = report_of(out)
    assert (data["id"], data["order"], data["status"]) == ("dyson-1.1", 50, "pass")


def test_verify_fail_json(broken):
    code, out = run("verify", "--id", "broken-sign")
    assert code == EXIT_FAIL
    data = report_of(out)
    assert data["status"] == "fail" and data["mismatch"]["exponent"] == 1
    assert data["order"] == 30


def test_verify_error_json(broken):
    code, out = run("verify", "--id", "broken-pole")
    assert code == EXIT_FAIL
    data = report_of(out)
    assert data["status"] == "error" and "SingularTerm" in data["message"]


def test_verify_all_fails_when_one_fails(broken):
    code, out = run("verify-all", "--order", "10")
    assert code == EXIT_FAIL
    statuses = [report_of(line)["status"] for line in out.splitlines()]
    assert statuses.count("pass") == len(statuses) - 2


def test_usage_errors(capsys):
    assert run("verify", "--id", "nonexistent")[0] == EXIT_USAGE
    assert "nonexistent" in capsys.readouterr().err
    assert run("verify")[0] == EXIT_USAGE
    assert run("verify", "--id", "dyson-1.1", "--order", "-3")[0] == EXIT_USAGE
    assert run("verify", "--id", "dyson-1.1", "--x", "abc")[0] == EXIT_USAGE
    assert run("frobnicate")[0] == EXIT_USAGE
    assert run("verify-all", "--jobs", "0")[0] == EXIT_USAGE


def test_finite_identity_at_order_zero():
    code, out = run("verify", "--id", "qbi-8.1", "--order", "0")
    assert code == EXIT_OK and report_of(out)["status"] == "pass"


def test_single_x_point():
    code, out = run("verify", "--id", "thm-1.1", "--order", "30", "--x", "1/3")
    assert code == EXIT_OK
    assert report_of(out)["context"] == {"x": "1/3"}


def test_env_order_and_flag_precedence(monkeypatch):
    monkeypatch.setenv(ENV_ORDER, "17")
    assert report_of(run("verify", "--id", "dyson-1.1")[1])["order"] == 17
    assert report_of(run("verify", "--id", "dyson-1.1", "--order", "23")[1])["order"] == 23
    assert report_of(run("verify", "--id", "dyson-1.1", "--dsl")[1])["order"] == 17
    code, out = run("expand", "q", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["order"] == 17
    monkeypatch.delenv(ENV_ORDER)
    assert report_of(run("verify", "--id", "cor-7.2", "--order", "20")[1])["order"] == 20


def test_dsl_path():
    code, out = run("verify", "--id", "mock-mu2", "--order", "40", "--dsl")
    assert code == EXIT_OK and report_of(out)["status"] == "pass"


def test_list():
    code, out = run("list")
    assert code == EXIT_OK
    assert len(out.splitlines()) == len(REGISTRY)
    code, out = run("list", "--format", "json")
    assert [r["id"] for r in json.loads(out)] == list(REGISTRY)


def test_expand(monkeypatch):
    monkeypatch.delenv(ENV_ORDER, raising=False)
    code, out = run("expand", "qbinom(4,2,1)", "--order", "4")
    assert code == EXIT_OK
    assert [line.split("\t")[1] for line in out.splitlines()] == ["1", "1", "2", "1", "1"]
    code, out = run("expand", "1/(1-q)/2", "--order", "2", "--format", "json")
    assert json.loads(out) == {"order": 2, "coefficients": ["1/2", "1/2", "1/2"]}
    assert run("expand", "chebv(x, 2)", "--order", "0", "--x", "3/2")[1].split() == ["0", "5"]
    assert run("expand", "q")[0] == EXIT_USAGE
    assert run("expand", "poch(q, q,", "--order", "3")[0] == EXIT_USAGE
    assert run("expand", "chebv(x, 2)", "--order", "3")[0] == EXIT_USAGE
    assert run("expand", "q^(-1)", "--order", "3")[0] == EXIT_FAIL


def test_entry_point_exit_codes():
    ok = subprocess.run([sys.executable, "-m", "qrr", "verify", "--id", "entry-5.3.4", "--order", "20"],
                        capture_output=True, text=True)
    assert ok.returncode == 0 and json.loads(ok.stdout)["status"] == "pass"
    bad = subprocess.run([sys.executable, "-m", "qrr", "verify", "--id", "nonexistent"], capture_output=True, text=True)
    assert bad.returncode == 2 and bad.stderr
