from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from sqfun_lab.errors import DimensionMismatchError
from sqfun_lab.grids.models import DiscreteHilbert
from sqfun_lab.linalg.models import CMatrix, as_cmatrix

FRAME_DEFECT_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class FrameSpec:
    """A finite frame (f_alpha) of C^d with analysis R and synthesis L.

    R h = (<h, f_alpha>)_alpha, so R = F^*; L is a left inverse of R. Grid
    frames live in sqrt(weight)-scaled coordinates of ``grid``.
    """

    vectors: CMatrix
    R: CMatrix
    L: CMatrix
    labels: tuple[str, ...]
    grid: DiscreteHilbert | None = field(default=None)

    def __post_init__(self):
        d, m = self.vectors.shape
        if self.R.shape != (m, d) or self.L.shape != (d, m):
            raise DimensionMismatchError(
                f"Frame of {m} vectors in C^{d} needs R {(m, d)} and L {(d, m)},"
                f" got {self.R.shape} and {self.L.shape}"
            )
        if len(self.labels) != m:
            raise DimensionMismatchError(f"{len(self.labels)} labels for {m} vectors")

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @property
    def size(self) -> int:
        return self.vectors.shape[1]

    @property
    def defect(self) -> float:
        """||L R - I||_2; at most FRAME_DEFECT_TOLERANCE for a genuine frame."""
        return float(np.linalg.norm(self.L @ self.R - np.eye(self.dim), 2))

    def analyze(self, h: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        return self.R @ np.asarray(h, dtype=np.complex128)

    def synthesize(self, c: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        return self.L @ np.asarray(c, dtype=np.complex128)


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float
    sampled_lower: float
    sampled_upper: float
    degenerate: bool


@dataclass(frozen=True, eq=False)
class L1Bound:
    """Upper estimate of the l1-frame bound |M|_1 for one declared frame."""

    kind: str
    value: float
    frame: FrameSpec | None = None
    maximizer: npt.NDArray[np.complex128] | None = None
    profile: npt.NDArray[np.float64] | None = None


def frame_from_vectors(
    vectors: npt.ArrayLike, grid: DiscreteHilbert | None = None, labels: tuple[str, ...] | None = None
) -> FrameSpec:
    """Frame with the canonical dual L = (R^* R)^{-1} R^* (a pseudo-inverse if rank deficient).

    With ``grid`` the columns are node values and are moved to grid coordinates.
    """
    F = as_cmatrix(vectors)
    if grid is not None:
        if F.shape[0] != grid.size:
            raise DimensionMismatchError(f"Vectors have {F.shape[0]} rows, grid has {grid.size} nodes")
        F = F * grid.sqrt_weights[:, None]
    R = F.conj().T
    labels = labels or tuple(str(alpha) for alpha in range(F.shape[1]))
    return FrameSpec(F, R, np.linalg.pinv(R), labels, grid)


def push_forward(frame: FrameSpec, S: npt.ArrayLike) -> FrameSpec:
    """The frame (S L, R S^{-1}) adapted to S(M); its vectors are S^{-*} f_alpha."""
    S = as_cmatrix(S)
    if S.shape != (frame.dim, frame.dim):
        raise DimensionMismatchError(f"S must be {frame.dim}x{frame.dim}, got {S.shape}")
    S_inv = np.linalg.inv(S)
    return FrameSpec(S_inv.conj().T @ frame.vectors, frame.R @ S_inv, S @ frame.L, frame.labels, frame.grid)
