import math
import warnings
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from sqfun_lab.grids.models import DiscreteHilbert


@dataclass(frozen=True)
class FourierResult:
    points: npt.NDArray[np.float64]
    values: npt.NDArray[np.complex128]
    edge_decay_ok: bool


def discrete_fourier(
    grid: DiscreteHilbert,
    g: npt.ArrayLike,
    points: npt.ArrayLike,
    inverse: bool = False,
    tol: float = 1e-6,
) -> FourierResult:
    """Trapezoid Fourier transform of a grid function on a line grid.

    Forward: g^(t) = int g(s) e^{ist} ds. Inverse: (1/2pi) int g(s) e^{-ist} ds.
    Values at the two grid edges above 1e-3 * tol of the peak are flagged.
    """
    grid.require("lebesgue-line")
    g = np.asarray(g, dtype=np.complex128)
    points = np.atleast_1d(np.asarray(points, dtype=np.float64))

    peak = float(np.max(np.abs(g)))
    edge = max(abs(g[0]), abs(g[-1]))
    edge_decay_ok = bool(edge <= 1e-3 * tol * peak)
    if not edge_decay_ok:
        warnings.warn(
            f"Grid function has not decayed at the grid edges ({edge:.3e} vs peak {peak:.3e})",
            RuntimeWarning,
            stacklevel=2,
        )

    sign, factor = (-1.0, 1 / (2 * math.pi)) if inverse else (1.0, 1.0)
    phases = np.exp(sign * 1j * np.outer(points, grid.nodes))
    return FourierResult(points, factor * (phases @ (grid.weights * g)), edge_decay_ok)
