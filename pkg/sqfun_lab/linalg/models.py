from __future__ import annotations

from dataclasses import dataclass
from typing import Annotated, Any, Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, model_validator

from sqfun_lab.errors import DimensionMismatchError

CMatrix = npt.NDArray[np.complex128]
CVector = npt.NDArray[np.complex128]


def as_cmatrix(a: Any) -> CMatrix:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.size == 0:
        raise DimensionMismatchError(f"Expected a nonempty 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("Matrix entries must be finite")
    return m


def as_cvector(x: Any) -> CVector:
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise DimensionMismatchError(f"Expected a nonempty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("Vector entries must be finite")
    return v


class NormSpec(BaseModel):
    """A norm on C^n: plain or weighted l^p, or the Euclidean (Hilbert) norm."""

    kind: Literal["lp", "weighted-lp", "hilbert"]
    p: Annotated[float, Field(ge=1.0)] = 2.0
    weights: tuple[PositiveFloat, ...] | None = None
    cotype_q: Annotated[float, Field(ge=2.0)] | None = None
    cotype_constant: PositiveFloat | None = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="before")
    @classmethod
    def _hilbert_metadata(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("kind") == "hilbert":
            return {**data, "p": 2.0, "cotype_q": 2.0, "cotype_constant": 1.0}
        return data

    @model_validator(mode="after")
    def _weights_match_kind(self) -> NormSpec:
        if self.kind == "weighted-lp" and not self.weights:
            raise ValueError("weighted-lp needs weights")
        if self.kind != "weighted-lp" and self.weights is not None:
            raise ValueError(f"{self.kind} takes no weights")
        return self

    @property
    def is_hilbert(self) -> bool:
        return self.kind == "hilbert" or (self.kind == "lp" and self.p == 2.0)

    def check_dim(self, n: int) -> None:
        if self.weights is not None and len(self.weights) != n:
            raise DimensionMismatchError(
                f"Norm has {len(self.weights)} weights but the space has dimension {n}"
            )


@dataclass(frozen=True)
class SvdFactors:
    """A = U @ diag(tau) @ V^*, tau descending."""

    U: CMatrix
    tau: npt.NDArray[np.float64]
    V: CMatrix

    def reconstruct(self) -> CMatrix:
        k = self.tau.size
        return (self.U[:, :k] * self.tau) @ self.V[:, :k].conj().T


@dataclass(frozen=True)
class PolarFactors:
    """A = W @ P with P = (A^*A)^(1/2)."""

    W: CMatrix
    P: CMatrix

    def reconstruct(self) -> CMatrix:
        return self.W @ self.P


@dataclass(frozen=True)
class OpNormEstimate:
    value: float
    certified: bool
    method: str
    iterations: int = 0


@dataclass(frozen=True)
class IsometryDecomposition:
    scale: float
    terms: tuple[tuple[float, CMatrix], ...]

    @property
    def weights(self) -> npt.NDArray[np.float64]:
        return np.array([weight for weight, _ in self.terms])

    def reconstruct(self) -> CMatrix:
        return self.scale * sum((weight * factor for weight, factor in self.terms), start=np.zeros_like(self.terms[0][1]))

    def unitarity_defect(self) -> float:
        defects = [
            np.linalg.norm(factor.conj().T @ factor - np.eye(factor.shape[1]), 2)
            for _, factor in self.terms
        ]
        return float(max(defects))
