import math
from typing import Any

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, Field, field_validator

from sqfun_lab.reports import complex_pair


class ReprReport(BaseModel):
    """Outcome of reconstructing u from one of the integral representations."""

    method: str
    points: list[list[float]]
    reconstructed: list[list[float]]
    reference: list[list[float]]
    max_error: float
    multiplier_nodes: list[float] | None = None
    multiplier: list[list[float]] | None = None
    multiplier_sup: float | None = None
    multiplier_bound: float | None = None
    details: dict[str, Any] = Field(default_factory=dict)

    @field_validator("max_error")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("Reconstruction error is not finite")
        return value

    def values(self) -> npt.NDArray[np.complex128]:
        return _as_complex(self.reconstructed)

    def multiplier_values(self) -> npt.NDArray[np.complex128] | None:
        return None if self.multiplier is None else _as_complex(self.multiplier)


def pairs(values: npt.ArrayLike) -> list[list[float]]:
    return [complex_pair(v) for v in np.ravel(np.asarray(values, dtype=np.complex128))]


def _as_complex(pairs: list[list[float]]) -> npt.NDArray[np.complex128]:
    array = np.asarray(pairs, dtype=np.float64).reshape(-1, 2)
    return array[:, 0] + 1j * array[:, 1]
