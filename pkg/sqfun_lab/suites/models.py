from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Literal, get_args

from pydantic import BaseModel, ConfigDict, Field
from scipy.stats import norm

SuiteName = Literal[
    "cross-norm",
    "contraction",
    "isometry-decomposition",
    "lattice",
    "calculus-laws",
    "cauchy-gauss",
    "poisson",
    "fourier-pair",
    "laplace",
    "singular-cauchy",
    "exponent-improvement",
    "sqfun-closed-forms",
    "equivalences",
    "frames",
    "l1-sqfe",
    "all",
]
SUITE_NAMES: tuple[str, ...] = get_args(SuiteName)

# Two-sided tail of a single 3 sigma band.
SINGLE_BAND_ERROR = 0.0027


class SuiteConfig(BaseModel):
    suite: SuiteName
    seed: int = 42
    samples: int = Field(default=20000, gt=1)
    tol: float | None = Field(default=None, ge=0)
    grid_scale: float = Field(default=1.0, gt=0)
    omega: float | None = Field(default=None, gt=0)
    out: Path = Path("reports")
    curves: bool = False
    yaml: bool = False
    workers: int = Field(default=1, ge=1)

    model_config = ConfigDict(extra="forbid")

    def scaled_tol(self, tol: float) -> float:
        return tol if self.tol is None else tol * self.tol

    def nodes(self, count: int) -> int:
        """Node count after the grid-scale override, kept odd."""
        scaled = max(int(math.ceil(count * self.grid_scale)), 9)
        return scaled if scaled % 2 else scaled + 1


class CaseResult(BaseModel):
    name: str
    value: float
    expected: float | None = None
    tol: float | None = None
    stderr: float | None = None
    passed: bool = Field(alias="pass")
    error: str | None = None
    curves: list[str] = Field(default_factory=list, exclude=True)

    model_config = ConfigDict(populate_by_name=True)


class SuiteError(BaseModel):
    type: str
    message: str


class SuiteReport(BaseModel):
    suite: str
    seed: int
    generated_at: datetime | None = None
    cases: list[CaseResult] = Field(default_factory=list)
    error: SuiteError | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(case.passed for case in self.cases)

    def as_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)

    def as_dict(self) -> dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)


@dataclass(frozen=True)
class Case:
    name: str
    run: Callable[[], CaseResult]


def family_band(instances: int) -> float:
    """Width in sigma of a band over ``instances`` independent tests with the
    family-wise error of one 3 sigma test."""
    if instances <= 1:
        return 3.0
    return float(norm.isf(SINGLE_BAND_ERROR / (2 * instances)))


def close_to(name: str, value: float, expected: float, tol: float, **extra: Any) -> CaseResult:
    return CaseResult(
        name=name, value=value, expected=expected, tol=tol, passed=abs(value - expected) <= tol, **extra
    )


def at_most(name: str, value: float, tol: float, **extra: Any) -> CaseResult:
    return CaseResult(name=name, value=value, expected=0.0, tol=tol, passed=value <= tol, **extra)
