import math
from datetime import datetime, timezone
from pathlib import Path

import yaml

from sqfun_lab.multiprocess.pool import use_map
from sqfun_lab.suites.catalog import CATALOG
from sqfun_lab.suites.models import Case, CaseResult, SuiteConfig, SuiteError, SuiteReport


def build_cases(config: SuiteConfig) -> list[Case]:
    """Cases of one suite, or of every suite prefixed ``<suite>/`` for ``all``."""
    if config.suite != "all":
        _, builder = CATALOG[config.suite]
        return builder(config)
    return [
        Case(f"{name}/{case.name}", case.run)
        for name, (_, builder) in CATALOG.items()
        for case in builder(config)
    ]


def _run_case(case: Case) -> CaseResult:
    try:
        result = case.run()
    except (ValueError, ArithmeticError) as e:
        # Numerical failures fail the case; the rest of the suite still runs.
        return CaseResult(name=case.name, value=math.nan, passed=False, error=f"{type(e).__name__}: {e}")
    return result.model_copy(update={"name": case.name})


def run_suite(config: SuiteConfig) -> SuiteReport:
    # Pool workers are daemonic and cannot start pools of their own.
    inner = config if config.workers <= 1 else config.model_copy(update={"workers": 1})
    results = use_map(config.workers)(_run_case, build_cases(inner))
    return SuiteReport(
        suite=config.suite,
        seed=config.seed,
        generated_at=datetime.now(timezone.utc),
        cases=sorted(results, key=lambda result: result.name),
    )


def failure_report(config: SuiteConfig | None, error: Exception, suite: str = "", seed: int = 0) -> SuiteReport:
    return SuiteReport(
        suite=config.suite if config else suite,
        seed=config.seed if config else seed,
        error=SuiteError(type=type(error).__name__, message=str(error)),
    )


def write_report(report: SuiteReport, out: Path, mirror_yaml: bool = False) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    stem = report.suite or "config"
    json_path = out / f"{stem}.json"
    json_path.write_text(report.as_json() + "\n", encoding="utf-8", newline="\n")
    paths = [json_path]
    if mirror_yaml:
        yaml_path = out / f"{stem}.yaml"
        yaml_path.write_text(
            yaml.safe_dump(report.as_dict(), sort_keys=False, allow_unicode=True),
            encoding="utf-8",
            newline="\n",
        )
        paths.append(yaml_path)
    return paths


def report_curves(report: SuiteReport) -> list[str]:
    return [path for case in report.cases for path in case.curves]
