from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Literal

import numpy as np
import numpy.typing as npt

from sqfun_lab.calculus.context import CalculusContext, with_elementary, with_gauss_cauchy
from sqfun_lab.calculus.models import ClassTag, HolFn
from sqfun_lab.errors import GridMismatchError
from sqfun_lab.grids.models import DiscreteHilbert

KernelKind = Literal["shift", "dilation", "group-orbit", "resolvent-boundary", "custom", "tensor"]
KernelEvaluator = Callable[[npt.NDArray[np.generic], npt.NDArray[np.complex128]], npt.NDArray[np.complex128]]
PreferredMethod = Literal["elementary", "gauss-cauchy"]

# Dilation kernels live on log S; |Re z| <= 80 covers psi(t e^z) for t in [1e-12, 1e12].
_LOG_HALF_WIDTH = 80.0


@dataclass(frozen=True, eq=False)
class KernelFn:
    """f(t, z) for grid nodes t, holomorphic and bounded in z on the admissible region.

    ``evaluator(t, z)`` takes K nodes and J points and returns a (K, J) array.
    Sector kernels (``sector=True``) are evaluated on log S, so z ranges over
    the strip of half-height equal to the sector angle. With ``indexed=True``
    the evaluator receives node indices instead of nodes.
    """

    kind: KernelKind
    grid: DiscreteHilbert
    evaluator: KernelEvaluator
    strip_half_height: float
    class_tag: ClassTag
    name: str
    preferred: PreferredMethod = "gauss-cauchy"
    half_width: float = 1e6
    sector: bool = False
    indexed: bool = False

    def arguments(self, rows: slice | npt.NDArray[np.intp] = slice(None)) -> npt.NDArray[np.generic]:
        """Grid nodes, or node indices for kernels defined by a matrix over the grid."""
        return np.arange(self.grid.size)[rows] if self.indexed else self.grid.nodes[rows]

    def values(self, z: npt.ArrayLike, rows: slice | npt.NDArray[np.intp] = slice(None)):
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        return self.evaluator(self.arguments(rows), z)

    def at(self, index: int) -> HolFn:
        """z -> f(t_index, z) as a plain strip function."""
        node = self.arguments(slice(index, index + 1))
        return HolFn(
            lambda z: self.evaluator(node, np.ravel(z)).reshape(np.shape(z)),
            self.strip_half_height,
            self.class_tag,
            f"{self.name}[{index}]",
        )

    def region(self) -> HolFn:
        """Stand-in carrying the admissible strip, used to place contours."""
        return HolFn(lambda z: np.ones_like(z), self.strip_half_height, self.class_tag, self.name)

    def conjugate(self) -> KernelFn:
        """conj(f(t, conj(z))), the kernel of f(t, A)^* at A^*."""
        return replace(
            self,
            evaluator=lambda t, z: np.conj(self.evaluator(t, np.conj(z))),
            name=f"conj({self.name})",
        )

    def contract(self, other: KernelFn) -> HolFn:
        """<f, g>(z) = sum_j w_j f(t_j, z) g(t_j, z) over the shared grid."""
        if other.grid is not self.grid:
            raise GridMismatchError("Contraction needs kernels on the same grid")
        weights = self.grid.weights

        def contracted(z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
            flat = np.ravel(z)
            total = weights @ (self.values(flat) * other.values(flat))
            return total.reshape(np.shape(z))

        return HolFn(
            contracted,
            min(self.strip_half_height, other.strip_half_height),
            "bounded",
            f"<{self.name},{other.name}>",
        )

    def context(self, num_workers: int = 1) -> CalculusContext:
        match self.preferred:
            case "elementary":
                return with_elementary(half_width=self.half_width, num_workers=num_workers)
            case "gauss-cauchy":
                return with_gauss_cauchy(num_workers=num_workers)
            case unknown:
                raise ValueError(f"Unknown kernel method: {unknown}")


def shift_kernel(psi: HolFn, grid: DiscreteHilbert) -> KernelFn:
    """psi(t + z) on a line grid."""
    grid.require("lebesgue-line")
    return KernelFn(
        kind="shift",
        grid=grid,
        evaluator=lambda t, z: psi(t[:, None] + z[None, :]),
        strip_half_height=psi.strip_half_height,
        class_tag=psi.class_tag,
        name=f"shift({psi.name})",
        preferred="elementary" if psi.class_tag == "elementary" else "gauss-cauchy",
    )


def dilation_kernel(psi: HolFn, grid: DiscreteHilbert) -> KernelFn:
    """psi(t zeta) on a mult-Haar grid, zeta = e^z in the sector of psi."""
    grid.require("mult-haar")
    if not psi.sector:
        raise ValueError(f"{psi.name} is not a sector function")
    return KernelFn(
        kind="dilation",
        grid=grid,
        evaluator=lambda t, z: psi(t[:, None] * np.exp(z)[None, :]),
        strip_half_height=psi.strip_half_height,
        class_tag=psi.class_tag,
        name=f"dilation({psi.name})",
        preferred="elementary" if psi.class_tag == "elementary" else "gauss-cauchy",
        half_width=_LOG_HALF_WIDTH,
        sector=True,
    )


def group_orbit_kernel(
    omega: float, grid: DiscreteHilbert, reflected: bool = False, scale: float = 1.0
) -> KernelFn:
    """scale e^{-itz} / cosh(omega t), or e^{+itz} / cosh(omega t) when ``reflected``."""
    grid.require("lebesgue-line")
    sign = 1.0 if reflected else -1.0

    def evaluator(t, z):
        t = t[:, None].real
        exponent = sign * 1j * t * z[None, :] - omega * np.abs(t)
        return scale * 2 * np.exp(exponent) / (1 + np.exp(-2 * omega * np.abs(t)))

    return KernelFn(
        kind="group-orbit",
        grid=grid,
        evaluator=evaluator,
        strip_half_height=omega,
        class_tag="bounded",
        name=f"orbit{'+' if reflected else '-'}({omega:g})",
    )


def resolvent_boundary_kernel(grid: DiscreteHilbert) -> KernelFn:
    """1 / (lambda - z) for lambda on the boundary of St_omega."""
    grid.require("boundary-strip")
    assert grid.omega is not None
    return KernelFn(
        kind="resolvent-boundary",
        grid=grid,
        evaluator=lambda lam, z: 1 / (lam[:, None] - z[None, :]),
        strip_half_height=grid.omega,
        class_tag="bounded",
        name=f"resolvent({grid.omega:g})",
    )


def custom_kernel(
    evaluator: KernelEvaluator,
    grid: DiscreteHilbert,
    strip_half_height: float,
    class_tag: ClassTag = "bounded",
    name: str = "custom",
    preferred: PreferredMethod = "gauss-cauchy",
    sector: bool = False,
    indexed: bool = False,
) -> KernelFn:
    return KernelFn(
        "custom",
        grid,
        evaluator,
        strip_half_height,
        class_tag,
        name,
        preferred,
        _LOG_HALF_WIDTH if sector else 1e6,
        sector,
        indexed,
    )


def tensor_kernel(first: KernelFn, second: KernelFn) -> KernelFn:
    """f(t, z) g(s, z) on the product grid."""
    if first.sector != second.sector:
        raise ValueError("Cannot tensor a strip kernel with a sector kernel")
    if first.indexed or second.indexed:
        raise ValueError("Tensor kernels need node-evaluated factors")
    both_elementary = first.preferred == second.preferred == "elementary"
    return KernelFn(
        kind="tensor",
        grid=first.grid.tensor(second.grid),
        evaluator=lambda ts, z: first.evaluator(ts[:, 0], z) * second.evaluator(ts[:, 1], z),
        strip_half_height=min(first.strip_half_height, second.strip_half_height),
        class_tag="elementary" if both_elementary else "bounded",
        name=f"{first.name}(x){second.name}",
        preferred="elementary" if both_elementary else "gauss-cauchy",
        half_width=min(first.half_width, second.half_width),
        sector=first.sector,
    )


def power_exp(alpha: float) -> HolFn:
    """phi_alpha(zeta) = zeta^alpha e^{-zeta} on the sector |arg zeta| < pi/2."""
    def evaluator(zeta):
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(zeta == 0, 0.0, np.power(zeta, alpha) * np.exp(-zeta))

    return HolFn(
        evaluator,
        math.pi / 2,
        "elementary",
        f"phi_{alpha:g}",
        sector=True,
    )
