from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np
import numpy.typing as npt

from sqfun_lab.export import write_sqfun_csv
from sqfun_lab.gamma.models import FiniteRankOp
from sqfun_lab.grids.models import DiscreteHilbert
from sqfun_lab.linalg.models import NormSpec

Side = Literal["primal", "dual"]


@dataclass(frozen=True, eq=False)
class SqfOutput:
    """Columns sqrt(w_j) f(t_j, A) x (primal) or sqrt(w_j) f(t_j, A)^* x' (dual)."""

    operator: FiniteRankOp
    side: Side
    kernel: str
    a_digest: str

    @property
    def grid(self) -> DiscreteHilbert:
        assert self.operator.domain is not None
        return self.operator.domain

    @property
    def matrix(self) -> npt.NDArray[np.complex128]:
        return self.operator.matrix

    def node_values(self) -> npt.NDArray[np.complex128]:
        """f(t_j, A) x per node, shape (nodes, n)."""
        return self.matrix.T / self.grid.sqrt_weights[:, None]

    def with_norm(self, norm: NormSpec) -> FiniteRankOp:
        return FiniteRankOp(self.matrix, norm, self.grid)

    def to_csv(self, path: Path) -> Path:
        return write_sqfun_csv(path, self)
