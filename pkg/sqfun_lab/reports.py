import hashlib
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class CheckReport(BaseModel):
    op: str
    inputs_digest: str
    value: float
    expected: float | None = None
    bound: float | None = None
    stderr: float | None = None
    tol: float | None = None
    passed: bool = Field(alias="pass")
    details: dict[str, Any] = Field(default_factory=dict)

    model_config = ConfigDict(populate_by_name=True)

    def as_json(self) -> str:
        return self.model_dump_json(by_alias=True)


def digest(*arrays: Any) -> str:
    """sha256 over the raw bytes of the given arrays (scalars included)."""
    h = hashlib.sha256()
    for array in arrays:
        a = np.ascontiguousarray(np.asarray(array))
        h.update(str(a.dtype).encode())
        h.update(str(a.shape).encode())
        h.update(a.tobytes())
    return h.hexdigest()


def complex_pair(value: complex) -> list[float]:
    return [float(np.real(value)), float(np.imag(value))]
