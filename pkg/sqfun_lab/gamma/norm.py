import math
from dataclasses import dataclass
from typing_extensions import Unpack

import numpy as np

from sqfun_lab.errors import MethodMismatchError
from sqfun_lab.gamma.context import GammaNormContext
from sqfun_lab.gamma.models import FiniteRankOp, GaussianSampler
from sqfun_lab.linalg.norms import vector_norm
from sqfun_lab.multiprocess.pool import use_map


@dataclass(frozen=True)
class GammaEstimate:
    value: float
    stderr: float | None
    method: str
    samples: int = 0

    @property
    def squared_stderr(self) -> float:
        """Standard error of value**2."""
        return 0.0 if self.stderr is None else 2 * self.value * self.stderr


def gamma_norm(T: FiniteRankOp, **context: Unpack[GammaNormContext]) -> GammaEstimate:
    """gamma-norm of T over the full basis of H.

    hilbert-exact is the Hilbert-Schmidt norm, lattice-exact the square
    function norm ||(sum_j |T e_j|^2)^(1/2)||_X, and monte-carlo the root mean
    square of ||sum_j gamma_j T e_j||_X with a delta-method standard error.
    """
    method = context["gamma_method"]
    norm = T.codomain_norm

    match method["gamma_variant"]:
        case "hilbert-exact":
            if not norm.is_hilbert:
                raise MethodMismatchError(f"hilbert-exact needs a Hilbert codomain, got {norm.kind}")
            return GammaEstimate(float(np.linalg.norm(T.matrix)), None, "hilbert-exact")
        case "lattice-exact":
            if norm.kind not in ("lp", "weighted-lp"):
                raise MethodMismatchError(f"lattice-exact needs an l^p codomain, got {norm.kind}")
            square = np.sqrt(np.sum(np.abs(T.matrix) ** 2, axis=1))
            return GammaEstimate(float(vector_norm(square, norm)), None, "lattice-exact")
        case "monte-carlo":
            return _monte_carlo(T, method["samples"], method["seed"], context["num_workers"])
        case unknown:
            raise ValueError(f"Unknown gamma method: {unknown}")


def _monte_carlo(T: FiniteRankOp, samples: int, seed: int, num_workers: int) -> GammaEstimate:
    sampler = GaussianSampler(seed)
    map = use_map(num_workers)

    def moments(chunk: tuple[int, int]) -> tuple[float, float]:
        index, size = chunk
        squares = vector_norm(sampler.chunk(index, size, T.m) @ T.matrix.T, T.codomain_norm) ** 2
        return float(np.sum(squares)), float(np.sum(squares**2))

    totals = np.sum(map(moments, sampler.chunks(samples)), axis=0)
    mean = totals[0] / samples
    variance = max(totals[1] / samples - mean**2, 0.0) * samples / (samples - 1)

    value = math.sqrt(mean)
    stderr = math.sqrt(variance / samples) / (2 * value) if value > 0 else 0.0
    return GammaEstimate(value, stderr, "monte-carlo", samples)
