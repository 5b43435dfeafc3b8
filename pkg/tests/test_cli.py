import json

import pytest

from src.cli import (
    Backend, Command, EXIT_CONFIG, EXIT_FAILED, EXIT_OK, parse_args, run,
    RunConfig, SCHEMA, ThetaSpec
)
from src.errors import ConfigError


def _run_json(tmp_path, *args):
    out = tmp_path / "report.json"
    code = run(list(args) + ["--out", str(out), "--quiet"])
    return code, json.loads(out.read_text(encoding="utf-8"))


def test_theta_forms():
    assert ThetaSpec.parse("generic", 3).generic
    assert ThetaSpec.parse("1,1,1,-1", 2).exceptional == (1, 1, 1, -1)
    assert ThetaSpec.parse("-1,1", 3).exceptional == (-1, 0, 1, 1)
    assert str(ThetaSpec.parse("3/5", 2)) == "3/5"
    for text, n in (("1,1", 2), ("1,2,1,1", 2), ("x", 2), ("0", 2), ("1,a,1,1", 2)):
        with pytest.raises(ConfigError):
            ThetaSpec.parse(text, n)


def test_config_defaults():
    cfg = parse_args(["modules", "--n", "4"])
    assert cfg.command == Command.MODULES
    assert cfg.seed == RunConfig.DEFAULT_SEED
    assert cfg.genericity_bound == 20
    assert cfg.backend == Backend.NUMERIC
    with pytest.raises(ConfigError):
        RunConfig(Command.GRAM, 2, backend=Backend.SYMBOLIC,
                  theta=ThetaSpec(tau=2))


def test_modules_report(tmp_path):
    code, report = _run_json(tmp_path, "modules", "--n", "4")
    assert code == EXIT_OK
    assert report["schema"] == SCHEMA
    assert report["passed"] and report["first_failure"] is None
    dims = sorted(entry["dim"] for entry in report["data"]["modules"])
    assert dims == [1, 1, 1, 1, 5, 5, 5, 16]


def test_gram_report(tmp_path):
    code, report = _run_json(tmp_path, "gram", "--n", "2")
    assert code == EXIT_OK
    assert report["command"] == "gram" and report["n"] == 2
    assert report["data"]["gram"][0] == ["", "))", ")(*", "()", "(("]
    assert len(report["data"]["exceptional"]) == 8
    assert report["data"]["det_bruteforce"] != "0/1"


def test_corrupted_relations_fail(tmp_path):
    code, report = _run_json(tmp_path, "relations", "--n", "2", "--corrupt")
    assert code == EXIT_FAILED
    assert not report["passed"]
    assert report["first_failure"]["identity"] == "e1^2 = c e1"


def test_relations_pass(tmp_path):
    code, report = _run_json(tmp_path, "relations", "--n", "3")
    assert code == EXIT_OK, report["first_failure"]


def test_exceptional_gram(tmp_path):
    code, report = _run_json(tmp_path, "gram", "--n", "2", "--theta", "1,1,1,-1")
    assert report["theta"] == "1,1,1,-1"
    assert report["data"]["det_bruteforce"] == "0/1"
    assert "relation" in report["point"]


@pytest.mark.parametrize(
    "args",
    [["modules", "--n", "1"], ["gram", "--n", "2", "--theta", "2,1,1,1"],
     ["gram", "--n", "2", "--theta=-1/2"]],
    ids=["short chain", "bad quadruple", "negative tau"]
)
def test_configuration_errors(args):
    assert run(args + ["--quiet"]) == EXIT_CONFIG


def test_negative_value_needs_an_equals_sign():
    # argparse reads a separate -1/2 as an option
    with pytest.raises(SystemExit) as error:
        run(["gram", "--n", "2", "--theta", "-1/2", "--quiet"])
    assert error.value.code == EXIT_CONFIG


def test_symbolic_irreps_rejected(tmp_path):
    code, report = _run_json(tmp_path, "irreps", "--n", "2", "--backend", "symbolic")
    assert code == EXIT_CONFIG
    assert report["first_failure"]["error"] == "ConfigError"


def test_csv_output(tmp_path):
    out = tmp_path / "modules.csv"
    assert run(["modules", "--n", "3", "--format", "csv", "--out", str(out)]) == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "module,n,eps,through_lines,dim"
    assert lines[-1] == "W^(3)(b),,,0,8"


def test_reports_are_reproducible(tmp_path):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    for out in (first, second):
        assert run(["basis", "--n", "3", "--seed", "2", "--out", str(out), "--quiet"]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_stdout(capsys):
    assert run(["modules", "--n", "2", "--quiet"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["command"] == "modules"


def test_spinchain_and_irreps(tmp_path):
    code, report = _run_json(tmp_path, "spinchain", "--n", "2")
    assert code == EXIT_OK, report["first_failure"]
    code, report = _run_json(tmp_path, "irreps", "--n", "2")
    assert code == EXIT_OK, report["first_failure"]
    verdicts = {item["case"]: item["verdict"] for item in report["data"]["conjecture"]}
    assert verdicts["N=2, n=1, eps=(+1,+1)"] == "equivalent"


@pytest.mark.slow
def test_symbolic_relations(tmp_path):
    code, report = _run_json(tmp_path, "relations", "--n", "2", "--backend", "symbolic")
    assert code == EXIT_OK, report["first_failure"]
