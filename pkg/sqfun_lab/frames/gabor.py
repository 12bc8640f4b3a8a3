"""Gabor family f_{n,k}(s) = eta(s - k) e^{ins} with a smooth partition of unity eta.

The window is phi(t) = exp(-1 / (1 - (t/pi)^2)) on (-pi, pi), normalized by
its integer translates, eta = phi / sum_m phi(. - m). On each translate the
coefficients <g, f_{n,k}> are Fourier coefficients over one period, so they
come from a single FFT of the windowed samples.
"""

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, Field, model_validator

from sqfun_lab.calculus.diagnostics import cauchy_derivatives
from sqfun_lab.calculus.models import HolFn
from sqfun_lab.errors import ParameterRangeError
from sqfun_lab.frames.bounds import w12_integral
from sqfun_lab.frames.models import FrameSpec, frame_from_vectors
from sqfun_lab.grids.make import make_grid
from sqfun_lab.grids.models import DiscreteHilbert
from sqfun_lab.multiprocess.pool import use_map

CoefficientMethod = Literal["direct", "ibp"]

# g must be below this fraction of its peak wherever the translates stop summing to 1.
COVERAGE_TOLERANCE = 1e-8
_TRANSLATE_OFFSETS = np.arange(-3, 5)


class GaborParams(BaseModel):
    translations: int = Field(default=8, ge=4)
    frequencies: int = Field(default=32, ge=1)
    samples: int = Field(default=1024, ge=64)
    derivative_radius: float = Field(default=0.5, gt=0)

    @model_validator(mode="after")
    def _resolves_frequencies(self):
        if self.samples <= 2 * self.frequencies + 1:
            raise ValueError(
                f"{self.samples} samples per window cannot resolve |n| <= {self.frequencies}"
            )
        return self

    @property
    def covered(self) -> float:
        """Half-length of the interval on which the translates sum to 1."""
        return self.translations - math.pi


def bump_jets(t: npt.ArrayLike) -> tuple[npt.NDArray[np.float64], ...]:
    """phi, phi', phi'' with phi(t) = exp(-1 / (1 - (t/pi)^2)) inside (-pi, pi)."""
    u = np.asarray(t, dtype=np.float64) / math.pi
    # exp(-1/q) underflows to 0 well before q reaches this.
    inside = 1 - u**2 > 1e-3
    q = np.where(inside, 1 - u**2, 1.0)
    phi = np.where(inside, np.exp(-1 / q), 0.0)
    slope = -2 * u / (math.pi * q**2)
    slope_prime = -2 / (math.pi**2 * q**2) - 8 * u**2 / (math.pi**2 * q**3)
    return phi, phi * slope, phi * (slope**2 + slope_prime)


def window_jets(s: npt.ArrayLike) -> tuple[npt.NDArray[np.float64], ...]:
    """eta, eta', eta'' for eta = phi / Phi, Phi(s) = sum_m phi(s - m) (1-periodic)."""
    s = np.asarray(s, dtype=np.float64)
    phi, phi1, phi2 = bump_jets(s)
    r = (s - np.floor(s))[..., None] - _TRANSLATE_OFFSETS
    total, total1, total2 = (jet.sum(axis=-1) for jet in bump_jets(r))
    eta = phi / total
    eta1 = phi1 / total - phi * total1 / total**2
    eta2 = (
        phi2 / total
        - 2 * phi1 * total1 / total**2
        - phi * total2 / total**2
        + 2 * phi * total1**2 / total**3
    )
    return eta, eta1, eta2


@dataclass(frozen=True, eq=False)
class GaborFrame:
    params: GaborParams

    @property
    def translates(self) -> npt.NDArray[np.int64]:
        K = self.params.translations
        return np.arange(-K, K + 1)

    @property
    def modulations(self) -> npt.NDArray[np.int64]:
        N = self.params.frequencies
        return np.arange(-N, N + 1)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"n={n},k={k}" for k in self.translates for n in self.modulations)

    def partition_residual(self, points: int = 4001) -> float:
        s = np.linspace(-self.params.covered, self.params.covered, points)
        eta, _, _ = window_jets(s[:, None] - self.translates[None, :])
        return float(np.max(np.abs(eta.sum(axis=1) - 1)))

    def check_coverage(self, g: HolFn) -> None:
        covered = self.params.covered
        inner = np.linspace(-covered, covered, 2001)
        outer = covered + np.linspace(0.0, 4 * math.pi, 401)
        peak = float(np.max(np.abs(g(inner))))
        edge = float(np.max(np.abs(np.concatenate([g(outer), g(-outer)]))))
        if edge > COVERAGE_TOLERANCE * peak:
            raise ParameterRangeError(
                f"{g.name} is {edge:.3e} outside the covered interval |s| <= {covered:.4g}"
                f" (peak {peak:.3e}); increase translations"
            )

    def coefficients(
        self, g: HolFn, method: CoefficientMethod = "direct", num_workers: int = 1
    ) -> npt.NDArray[np.complex128]:
        """<g, f_{n,k}> as an array indexed [k, n].

        direct: int eta_k g e^{-ins}. ibp: -(1/n^2) int (eta_k g)'' e^{-ins} for
        n != 0, the n = 0 column taken directly.
        """
        if method not in ("direct", "ibp"):
            raise ValueError(f"Unknown coefficient method: {method}")
        self.check_coverage(g)
        M = self.params.samples
        offsets = -math.pi + 2 * math.pi * np.arange(M) / M
        jets = window_jets(offsets)
        n = self.modulations
        radius = min(self.params.derivative_radius, g.strip_half_height / 2)

        def one_translate(k: int) -> npt.NDArray[np.complex128]:
            s = k + offsets
            values = g(s)
            transform = np.fft.fft(jets[0] * values)[n % M]
            if method == "ibp":
                first, second = cauchy_derivatives(g, s, radius)
                curvature = jets[2] * values + 2 * jets[1] * first + jets[0] * second
                integrated = np.fft.fft(curvature)[n % M]
                nonzero = n != 0
                transform[nonzero] = -integrated[nonzero] / n[nonzero] ** 2
            return 2 * math.pi / M * np.exp(-1j * n * (k - math.pi)) * transform

        return np.stack(use_map(num_workers)(one_translate, [int(k) for k in self.translates]))

    def coefficient_sum(self, g: HolFn, num_workers: int = 1) -> float:
        """sum_{n,k} |<g, f_{n,k}>|, n = 0 directly and n != 0 by integration by parts."""
        return float(np.sum(np.abs(self.coefficients(g, "ibp", num_workers))))

    def as_frame_spec(self, grid: DiscreteHilbert | None = None) -> FrameSpec:
        """The truncated family sampled on a line grid covering every translate."""
        if grid is None:
            half_width = self.params.translations + math.pi
            grid = make_grid("lebesgue-line", half_width=half_width, count=int(64 * half_width) + 1)
        grid.require("lebesgue-line")
        s = grid.nodes.astype(np.float64)
        eta, _, _ = window_jets(s[:, None] - self.translates[None, :])
        family = eta[:, :, None] * np.exp(1j * s[:, None, None] * self.modulations[None, None, :])
        return frame_from_vectors(family.reshape(s.size, -1), grid, self.labels)


def gabor_frame_build(params: GaborParams | None = None) -> GaborFrame:
    return GaborFrame(params or GaborParams())


def w12_norm(g: HolFn, grid: DiscreteHilbert, radius: float = 0.5) -> float:
    """int (|g| + |g'| + |g''|) over a line grid, derivatives by Cauchy's formula."""
    grid.require("lebesgue-line")
    return w12_integral(
        g, grid.nodes.astype(np.complex128), grid.weights, min(radius, g.strip_half_height / 2)
    )


def w12_ratios(
    frame: GaborFrame, functions: list[HolFn], grid: DiscreteHilbert, num_workers: int = 1
) -> npt.NDArray[np.float64]:
    """(sum |<g, f_{n,k}>|) / ||g||_{W^1_2} per function; bounded by one constant."""
    return np.array(
        [
            frame.coefficient_sum(g, num_workers) / w12_norm(g, grid, frame.params.derivative_radius)
            for g in functions
        ]
    )
