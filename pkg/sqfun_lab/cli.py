import argparse
import os
import sys
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, ValidationError

from sqfun_lab.suites.catalog import CATALOG
from sqfun_lab.suites.models import SuiteConfig
from sqfun_lab.suites.runner import failure_report, report_curves, run_suite, write_report

_ENVIRONMENT = {
    "seed": "SQFUN_LAB_SEED",
    "samples": "SQFUN_LAB_SAMPLES",
    "out": "SQFUN_LAB_OUT",
    "workers": "SQFUN_LAB_WORKERS",
}


class ConfigFile(BaseModel):
    """Any subset of the suite configuration, read from ``--json``."""

    suite: str | None = None
    seed: int | None = None
    samples: int | None = None
    tol: float | None = None
    grid_scale: float | None = None
    omega: float | None = None
    out: Path | None = None
    curves: bool | None = None
    yaml: bool | None = None
    workers: int | None = None

    model_config = ConfigDict(extra="forbid")


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="sqfun-lab", description="Run numerical square-function suites.")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run one suite, or all of them")
    run.add_argument("--suite")
    run.add_argument("--seed", type=int)
    run.add_argument("--samples", type=int)
    run.add_argument("--tol", type=float, help="multiplier applied to every case tolerance")
    run.add_argument("--grid-scale", dest="grid_scale", type=float)
    run.add_argument("--omega", type=float)
    run.add_argument("--out", type=Path)
    run.add_argument("--curves", action="store_true", default=None)
    run.add_argument("--yaml", action="store_true", default=None)
    run.add_argument("--workers", type=int)
    run.add_argument("--json", dest="config", type=Path, help="JSON file with config fields")

    commands.add_parser("list", help="print the suite catalogue as YAML")
    return parser.parse_args(argv)


def resolve_config(args: argparse.Namespace) -> SuiteConfig:
    """Environment defaults, then the JSON file, then flags."""
    values: dict[str, Any] = {
        field: os.environ[name] for field, name in _ENVIRONMENT.items() if os.environ.get(name)
    }
    if args.config is not None:
        config_file = ConfigFile.model_validate_json(args.config.read_text(encoding="utf-8"))
        values |= config_file.model_dump(exclude_none=True)
    values |= {
        field: value
        for field, value in vars(args).items()
        if field in SuiteConfig.model_fields and value is not None
    }
    return SuiteConfig.model_validate(values)


def list_suites() -> str:
    return yaml.safe_dump(
        {name: description for name, (description, _) in CATALOG.items()}, sort_keys=False
    )


def run(args: argparse.Namespace) -> int:
    try:
        config = resolve_config(args)
    except (ValidationError, ValueError, OSError) as e:
        report = failure_report(None, e, suite=args.suite or "config", seed=args.seed or 0)
        print(report.as_json(), file=sys.stderr)
        return 2

    print(f"[*] Running suite: {config.suite}")
    try:
        report = run_suite(config)
    except ValueError as e:
        report = failure_report(config, e)
        for path in write_report(report, config.out, config.yaml):
            print(f"[*] Saved: {path}")
        print(report.as_json(), file=sys.stderr)
        return 2

    for case in report.cases:
        detail = f" ({case.error})" if case.error else ""
        print(f"[*] case {case.name}: {'pass' if case.passed else 'FAIL'}{detail}")
    for path in [*write_report(report, config.out, config.yaml), *report_curves(report)]:
        print(f"[*] Saved: {path}")
    return 0 if report.passed else 1


def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    args = parse_args(argv)
    match args.command:
        case "run":
            return run(args)
        case "list":
            print(list_suites(), end="")
            return 0
        case unknown:
            raise ValueError(f"Unknown command: {unknown}")


if __name__ == "__main__":
    sys.exit(main())
