from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from sqfun_lab.errors import DimensionMismatchError, GridMismatchError
from sqfun_lab.grids.models import DiscreteHilbert
from sqfun_lab.linalg.models import CMatrix, NormSpec, as_cmatrix, as_cvector


@dataclass(frozen=True, eq=False)
class FiniteRankOp:
    """T: H -> X with H = l^2(m) (or a grid) and X = (C^n, codomain_norm).

    Column j of ``matrix`` is T applied to the j-th basis vector of H, in
    sqrt(weight)-scaled coordinates when H is a grid.
    """

    matrix: CMatrix
    codomain_norm: NormSpec
    domain: DiscreteHilbert | None = None

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_cmatrix(self.matrix))
        self.codomain_norm.check_dim(self.n)
        if self.domain is not None and self.domain.size != self.m:
            raise GridMismatchError(
                f"Operator has {self.m} columns but the grid has {self.domain.size} nodes"
            )

    @property
    def m(self) -> int:
        return self.matrix.shape[1]

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def columns(self) -> list[npt.NDArray[np.complex128]]:
        return list(self.matrix.T)

    def compose(self, L: npt.ArrayLike, R: npt.ArrayLike, target_norm: NormSpec) -> FiniteRankOp:
        """L T R with L acting on X and R on H."""
        L, R = as_cmatrix(L), as_cmatrix(R)
        if L.shape[1] != self.n or R.shape[0] != self.m:
            raise DimensionMismatchError(
                f"Cannot compose {L.shape} @ {self.matrix.shape} @ {R.shape}"
            )
        domain = self.domain if R.shape[1] == self.m else None
        return FiniteRankOp(L @ self.matrix @ R, target_norm, domain)


def rank_one(g: npt.ArrayLike, x: npt.ArrayLike, norm: NormSpec) -> FiniteRankOp:
    """The operator h -> <h, g> x."""
    return FiniteRankOp(np.outer(as_cvector(x), np.conj(as_cvector(g))), norm)


def from_representation(
    representation: list[tuple[npt.ArrayLike, npt.ArrayLike]], norm: NormSpec
) -> FiniteRankOp:
    """sum_j conj(g_j) (x) x_j."""
    if not representation:
        raise ValueError("Representation must have at least one term")
    terms = [np.outer(as_cvector(x), np.conj(as_cvector(g))) for g, x in representation]
    return FiniteRankOp(np.sum(terms, axis=0), norm)


def from_samples(grid: DiscreteHilbert, samples: npt.ArrayLike, norm: NormSpec) -> FiniteRankOp:
    """Integration operator h -> int h(t) f(t) dmu(t) of f sampled as (nodes, n)."""
    f = np.asarray(samples, dtype=np.complex128)
    if f.ndim != 2 or f.shape[0] != grid.size:
        raise GridMismatchError(f"Expected samples of shape ({grid.size}, n), got {f.shape}")
    return FiniteRankOp((f * grid.sqrt_weights[:, None]).T, norm, grid)


@dataclass(frozen=True)
class GaussianSampler:
    """Unit-variance complex Gaussians, gamma = (g_r + i g_i) / sqrt(2).

    Samples come in fixed chunks; chunk c is drawn from default_rng([seed, c]),
    so sample k is determined by (seed, k) whatever the worker count.
    """

    seed: int = 0
    chunk_size: int = 4096

    def chunk(self, index: int, size: int, width: int) -> npt.NDArray[np.complex128]:
        rng = np.random.default_rng([self.seed, index])
        draws = rng.standard_normal((size, width, 2))
        return (draws[..., 0] + 1j * draws[..., 1]) / math.sqrt(2)

    def chunks(self, samples: int) -> list[tuple[int, int]]:
        return [
            (index, min(self.chunk_size, samples - start))
            for index, start in enumerate(range(0, samples, self.chunk_size))
        ]
