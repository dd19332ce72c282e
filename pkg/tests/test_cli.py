import json
import subprocess
import sys
from importlib.resources import files

import jsonschema
import pytest

from medianswf.cli import main

SCHEMA = json.loads(files("medianswf").joinpath("schema/report.schema.json").read_text())
CYCLE = "a|b|c\nb|c|a\nc|a|b\n"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def cycle(tmp_path):
    path = tmp_path / "cycle.prof"
    path.write_text("# Condorcet cycle\n" + CYCLE)
    return str(path)


def test_enumerate_text(capsys):
    code, out, _ = run(capsys, "enumerate", "--ground", "a,b,c", "--format", "text")
    assert code == 0 and len(out.splitlines()) == 13


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--ground", "a,b,c,d")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["count"] == 75


def test_eval_cycle(capsys, cycle):
    code, out, _ = run(capsys, "eval", "--ground", "a,b,c", "--agents", "3", "--rule", "comajority", "--profile", cycle, "--format", "text")
    assert code == 0 and out.strip() == "a b c"
    code, out, _ = run(capsys, "eval", "--ground", "a,b,c", "--agents", "3", "--rule", "comajority", "--profile", cycle)
    jsonschema.validate(json.loads(out), SCHEMA)


def test_eval_agent_mismatch(capsys, cycle):
    code, _, err = run(capsys, "eval", "--ground", "a,b,c", "--agents", "4", "--rule", "comajority", "--profile", cycle)
    assert code == 2 and "--agents" in err


def test_eval_missing_file(capsys):
    code, _, err = run(capsys, "eval", "--ground", "a,b,c", "--agents", "3", "--rule", "un", "--profile", "/nonexistent.prof")
    assert code == 2 and err


def test_check_exit_codes(capsys):
    code, out, _ = run(capsys, "check", "--ground", "a,b,c", "--agents", "3", "--rule", "quota:q=3", "--axiom", "WP")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert code == 1 and doc["verdict"] == "fails" and doc["witness"]
    code, out, _ = run(capsys, "check", "--ground", "a,b,c", "--agents", "3", "--rule", "quota:q=3", "--axiom", "BP")
    assert code == 0 and json.loads(out)["verdict"] == "holds"


@pytest.mark.parametrize(
    "extra",
    [
        ["--axiom", "amp_p"],
        ["--axiom", "amp_s", "--scheme", "quota:q=2"],
        ["--axiom", "SP", "--meta", "both"],
        ["--axiom", "mmi"],
        ["--axiom", "decisive"],
    ],
)
def test_check_reports_validate(capsys, extra):
    code, out, _ = run(capsys, "check", "--ground", "a,b,c", "--agents", "3", "--rule", "quota:q=2", *extra)
    assert code in (0, 1)
    jsonschema.validate(json.loads(out), SCHEMA)


def test_check_sampled_m4(capsys):
    argv = ["check", "--ground", "a,b,c,d", "--agents", "3", "--rule", "comajority", "--axiom", "AN", "--samples", "100", "--seed", "9"]
    code, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "inconclusive-sampled"
    scope = {k: v for k, v in doc["scope"].items() if k != "domain_size"}
    assert scope == {"mode": "sampled", "m": 4, "n": 3, "seed": 9, "samples": 100}
    _, again, _ = run(capsys, *argv)
    assert again == out


def test_check_timing_flag(capsys):
    _, out, _ = run(capsys, "check", "--ground", "a,b,c", "--agents", "3", "--rule", "un", "--axiom", "ID", "--timing")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert "elapsed" in doc


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--ground", "a,b,c", "--agents", "3", "--rule", "nope", "--axiom", "IIA"],
        ["check", "--ground", "a,b,c", "--agents", "3", "--rule", "un", "--axiom", "nope"],
        ["check", "--ground", "a,b,c", "--agents", "3", "--rule", "un", "--axiom", "IIA", "--bogus"],
        ["check", "--ground", "a,b", "--agents", "3", "--rule", "un", "--axiom", "IIA"],
        ["check", "--ground", "a,b,c", "--agents", "2", "--rule", "un", "--axiom", "IIA"],
        ["check", "--ground", "a,b,c", "--rule", "un", "--axiom", "IIA"],
        ["check", "--ground", "a,b,c,d,e", "--agents", "3", "--rule", "un", "--axiom", "IIA"],
        ["check", "--ground", "a,b,c", "--agents", "3", "--rule", "borda", "--axiom", "amp_s"],
        ["check", "--ground", "a,b,c", "--agents", "3", "--rule", "fstar", "--axiom", "SP"],
        ["check", "--ground", "a,b,c", "--agents", "3", "--rule", "un", "--axiom", "IIA", "--exhaustive", "--samples", "3"],
        ["verify", "--suite", "nope"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err


def test_graph(capsys):
    code, out, _ = run(capsys, "graph", "--ground", "a,b,c")
    assert code == 0 and out.count("[label=") == 13
    code, out, _ = run(capsys, "graph", "--ground", "a,b,c", "--space", "sum")
    assert out.count("[label=") == 25


def test_verify_prop3(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "prop3")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert code == 0 and doc["summary"]["ok"]


def test_verify_text_and_failing_exit(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "theorem1", "--format", "text")
    assert code == 1 and "sp-iff-monotone-independence" in out.splitlines()[-1]


def test_env_seed_default(tmp_path):
    env = {"MEDIANSWF_SEED": "7", "PATH": ""}
    argv = [sys.executable, "-m", "medianswf", "check", "--ground", "a,b,c,d", "--agents", "3", "--rule", "un", "--axiom", "AN", "--samples", "20"]
    out = subprocess.run(argv, capture_output=True, text=True, env=env, check=False)
    assert out.returncode == 0, out.stderr
    assert json.loads(out.stdout)["scope"]["seed"] == 7
