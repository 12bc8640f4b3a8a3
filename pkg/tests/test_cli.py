import json
import math
from types import SimpleNamespace

import pytest
import yaml
from pydantic import ValidationError
from scipy.stats import norm

from sqfun_lab.cli import main, parse_args, resolve_config
from sqfun_lab.errors import DivergenceError
from sqfun_lab.suites.catalog import CATALOG
from sqfun_lab.suites.models import (
    SUITE_NAMES,
    Case,
    CaseResult,
    SuiteConfig,
    SuiteError,
    SuiteReport,
    at_most,
    close_to,
    family_band,
)
from sqfun_lab.suites.runner import build_cases, run_suite, write_report


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("SQFUN_LAB_SEED", "SQFUN_LAB_SAMPLES", "SQFUN_LAB_OUT", "SQFUN_LAB_WORKERS"):
        monkeypatch.delenv(name, raising=False)


def test_list_prints_the_catalog(capsys):
    assert main(["list"]) == 0

    listed = yaml.safe_load(capsys.readouterr().out)
    assert list(listed) == list(CATALOG)
    assert set(listed) == set(SUITE_NAMES) - {"all"}


def test_run_writes_a_passing_report(tmp_path, capsys):
    assert main(["run", "--suite", "exponent-improvement", "--out", str(tmp_path)]) == 0

    out = capsys.readouterr().out
    assert "[*] Running suite: exponent-improvement" in out
    report = json.loads((tmp_path / "exponent-improvement.json").read_text(encoding="utf-8"))
    assert report["suite"] == "exponent-improvement"
    assert report["seed"] == 42
    assert [case["name"] for case in report["cases"]] == [
        "beta-constant",
        "convolution-half-half",
        "isometry",
    ]
    assert all(case["pass"] for case in report["cases"])
    assert "error" not in report


def test_run_mirrors_yaml(tmp_path):
    assert main(["run", "--suite", "fourier-pair", "--omega", "1.0", "--out", str(tmp_path), "--yaml"]) == 0

    mirrored = yaml.safe_load((tmp_path / "fourier-pair.yaml").read_text(encoding="utf-8"))
    assert [case["name"] for case in mirrored["cases"]] == ["fourier-pair-omega1"]
    assert mirrored == json.loads((tmp_path / "fourier-pair.json").read_text(encoding="utf-8"))


def test_failing_tolerance_exits_with_one(tmp_path):
    assert main(["run", "--suite", "fourier-pair", "--omega", "1.0", "--tol", "0", "--out", str(tmp_path)]) == 1


def test_raising_case_fails_without_stopping_the_suite(tmp_path, monkeypatch, capsys):
    def diverging() -> CaseResult:
        raise DivergenceError("tail integral did not settle")

    def builder(config: SuiteConfig) -> list[Case]:
        return [Case("diverges", diverging), Case("settles", lambda: at_most("settles", 0.0, 1.0))]

    monkeypatch.setitem(CATALOG, "lattice", ("raising suite", builder))
    assert main(["run", "--suite", "lattice", "--out", str(tmp_path)]) == 1

    out = capsys.readouterr().out
    assert "[*] case diverges: FAIL (DivergenceError: tail integral did not settle)" in out
    report = json.loads((tmp_path / "lattice.json").read_text(encoding="utf-8"))
    assert "error" not in report
    failed, settled = report["cases"]
    assert failed["pass"] is False and failed["error"] == "DivergenceError: tail integral did not settle"
    assert settled == {"name": "settles", "value": 0.0, "expected": 0.0, "tol": 1.0, "pass": True}


@pytest.mark.parametrize(
    "flags",
    [["--suite", "unknown"], ["--suite", "lattice", "--samples", "1"], ["--suite", "lattice", "--workers", "0"]],
)
def test_invalid_configuration_exits_with_two(tmp_path, capsys, flags):
    assert main(["run", *flags, "--out", str(tmp_path)]) == 2

    report = json.loads(capsys.readouterr().err)
    assert report["error"]["type"] == "ValidationError"
    assert report["cases"] == []


def test_missing_config_file_exits_with_two(tmp_path, capsys):
    assert main(["run", "--suite", "lattice", "--json", str(tmp_path / "missing.json")]) == 2

    assert json.loads(capsys.readouterr().err)["error"]["type"] == "FileNotFoundError"


def test_environment_then_file_then_flags(tmp_path, monkeypatch):
    monkeypatch.setenv("SQFUN_LAB_SEED", "7")
    monkeypatch.setenv("SQFUN_LAB_SAMPLES", "500")
    monkeypatch.setenv("SQFUN_LAB_OUT", str(tmp_path / "env"))
    config_file = tmp_path / "config.json"
    config_file.write_text(json.dumps({"suite": "lattice", "seed": 9, "curves": True}), encoding="utf-8")

    from_env = resolve_config(parse_args(["run", "--suite", "lattice"]))
    assert (from_env.seed, from_env.samples, from_env.out) == (7, 500, tmp_path / "env")

    from_file = resolve_config(parse_args(["run", "--json", str(config_file)]))
    assert (from_file.suite, from_file.seed, from_file.samples, from_file.curves) == ("lattice", 9, 500, True)

    from_flags = resolve_config(parse_args(["run", "--json", str(config_file), "--seed", "11", "--grid-scale", "2"]))
    assert (from_flags.seed, from_flags.grid_scale) == (11, 2.0)


def test_config_file_rejects_unknown_fields(tmp_path):
    config_file = tmp_path / "config.json"
    config_file.write_text(json.dumps({"suite": "lattice", "precision": 3}), encoding="utf-8")

    with pytest.raises(ValidationError):
        resolve_config(parse_args(["run", "--json", str(config_file)]))


def test_all_prefixes_case_names_with_the_suite():
    cases = build_cases(SuiteConfig(suite="all"))
    prefixes = {case.name.split("/", 1)[0] for case in cases}

    assert prefixes == set(CATALOG)
    assert "sqfun-closed-forms/shift-gaussian" in {case.name for case in cases}


def test_contraction_monte_carlo_uses_a_hundred_instances(monkeypatch):
    norms = []

    def counting(A, xs, norm, **context):
        norms.append(norm)
        return SimpleNamespace(value=0.0, bound=1.0, stderr=1.0)

    monkeypatch.setattr("sqfun_lab.suites.catalog.check_contraction_principle", counting)
    (case,) = [case for case in build_cases(SuiteConfig(suite="contraction")) if case.name == "l4-monte-carlo"]
    result = case.run()

    assert len(norms) == 100
    assert result.passed
    assert result.tol == pytest.approx(family_band(100))


def test_pooled_run_matches_the_serial_run():
    serial = run_suite(SuiteConfig(suite="exponent-improvement"))
    pooled = run_suite(SuiteConfig(suite="exponent-improvement", workers=2))

    assert [case.model_dump() for case in pooled.cases] == [case.model_dump() for case in serial.cases]
    assert pooled.passed and pooled.generated_at is not None


def test_failure_report_is_written(tmp_path):
    report = SuiteReport(suite="lattice", seed=1, error=SuiteError(type="ValueError", message="boom"))
    (path,) = write_report(report, tmp_path)

    assert not report.passed
    assert json.loads(path.read_text(encoding="utf-8"))["error"] == {"type": "ValueError", "message": "boom"}


def test_family_band_widens_with_the_family():
    assert family_band(1) == 3.0
    assert family_band(5) == pytest.approx(norm.isf(0.0027 / 10))
    assert family_band(1000) > family_band(50) > 3.0


def test_config_helpers():
    config = SuiteConfig(suite="lattice", tol=10.0, grid_scale=0.5)

    assert config.scaled_tol(1e-6) == pytest.approx(1e-5)
    assert SuiteConfig(suite="lattice").scaled_tol(1e-6) == 1e-6
    assert config.nodes(2001) == 1001
    assert config.nodes(10) == 9
    assert SuiteConfig(suite="lattice", grid_scale=1.5).nodes(201) % 2 == 1


def test_case_results_serialize_pass():
    result = close_to("c", 1.0, 1.0 + 1e-9, 1e-8, curves=["a.csv"])

    assert result.passed
    assert result.model_dump(by_alias=True) == {
        "name": "c",
        "value": 1.0,
        "expected": 1.0 + 1e-9,
        "tol": 1e-8,
        "stderr": None,
        "pass": True,
        "error": None,
    }
    assert not at_most("a", 2.0, 1.0).passed
    assert CaseResult(name="n", value=math.inf, **{"pass": False}).value == math.inf
