import math
from typing import Literal

import numpy as np
import numpy.typing as npt
import scipy.linalg

from sqfun_lab.calculus.models import StripOperator
from sqfun_lab.fp.lazy_val import lazy_val
from sqfun_lab.grids.models import Contour
from sqfun_lab.linalg.models import CMatrix
from sqfun_lab.multiprocess.pool import use_map

SweepVariant = Literal["resolvent", "gauss-cauchy"]


def resolvent_stack(
    A: CMatrix, nodes: npt.NDArray[np.complex128], num_workers: int = 1
) -> npt.NDArray[np.complex128]:
    """(z_j I - A)^{-1} for every node, shape (N, d, d)."""
    return _in_chunks(lambda z: _resolvents(A, z), nodes, num_workers)


def gauss_cauchy_stack(
    A: CMatrix, nodes: npt.NDArray[np.complex128], num_workers: int = 1
) -> npt.NDArray[np.complex128]:
    """exp(-(z_j I - A)^2) (z_j I - A)^{-1} for every node."""

    def kernels(z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        shifted = z[:, None, None] * np.eye(A.shape[0]) - A
        return scipy.linalg.expm(-(shifted @ shifted)) @ _resolvents(A, z)

    return _in_chunks(kernels, nodes, num_workers)


def use_contour_sweep(
    operator: StripOperator,
    contour: Contour,
    variant: SweepVariant = "resolvent",
    num_workers: int = 1,
):
    """Operator kernels on ``contour`` computed once and shared by many integrands.

    ``integrate(values)`` maps node values of shape (..., N) to
    (1/2 pi i) sum_j values_j K_j dz_j, shape (..., d, d). ``apply_to(values, x)``
    returns the same integrals applied to x, shape (..., d), without forming
    the matrices.
    """

    @lazy_val
    def kernels() -> npt.NDArray[np.complex128]:
        match variant:
            case "resolvent":
                return resolvent_stack(operator.A, contour.nodes, num_workers)
            case "gauss-cauchy":
                return gauss_cauchy_stack(operator.A, contour.nodes, num_workers)
            case unknown:
                raise ValueError(f"Unknown sweep variant: {unknown}")

    def coefficients(values: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        return np.asarray(values, dtype=np.complex128) * contour.weights / (2j * math.pi)

    def integrate(values: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        return np.einsum("...j,jab->...ab", coefficients(values), kernels())

    def apply_to(values: npt.ArrayLike, x: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        return coefficients(values) @ (kernels() @ np.asarray(x, dtype=np.complex128))

    return (
        kernels,
        integrate,
        apply_to,
    )


def _resolvents(A: CMatrix, z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
    identity = np.eye(A.shape[0], dtype=np.complex128)
    shifted = z[:, None, None] * identity - A
    return np.linalg.solve(shifted, np.broadcast_to(identity, shifted.shape))


def _in_chunks(kernel, nodes: npt.NDArray[np.complex128], num_workers: int):
    if num_workers <= 1:
        return kernel(nodes)
    map = use_map(num_workers)
    parts = np.array_split(nodes, num_workers)
    return np.concatenate(map(kernel, parts), axis=0)
