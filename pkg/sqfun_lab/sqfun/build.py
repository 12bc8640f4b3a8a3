from typing_extensions import Unpack

import numpy as np
import numpy.typing as npt
import scipy.linalg

from sqfun_lab.calculus.apply import calculus_apply
from sqfun_lab.calculus.context import CalculusContext
from sqfun_lab.calculus.hooks import use_strip_operator
from sqfun_lab.errors import DimensionMismatchError, ParameterRangeError
from sqfun_lab.gamma.context import GammaNormContext, with_hilbert_exact
from sqfun_lab.gamma.models import FiniteRankOp
from sqfun_lab.gamma.norm import GammaEstimate, gamma_norm
from sqfun_lab.linalg.models import CMatrix, NormSpec, as_cmatrix, as_cvector
from sqfun_lab.linalg.norms import hilbert_space
from sqfun_lab.multiprocess.pool import chunked, use_map
from sqfun_lab.reports import digest
from sqfun_lab.sqfun.kernels import KernelFn
from sqfun_lab.sqfun.models import Side, SqfOutput

CHUNK_SIZE = 256


def calculus_matrix(kernel: KernelFn, A: npt.ArrayLike) -> CMatrix:
    """The matrix the kernel's z lives on: A itself, or log A for sector kernels."""
    A = as_cmatrix(A)
    if not kernel.sector:
        return A
    eigenvalues = np.linalg.eigvals(A)
    if np.any(np.abs(np.angle(eigenvalues)) >= kernel.strip_half_height) or np.any(eigenvalues == 0):
        raise ParameterRangeError(f"Spectrum of S leaves the sector of {kernel.name}")
    return scipy.linalg.logm(A)


def sqfun_matrix(
    kernel: KernelFn,
    A: npt.ArrayLike,
    x: npt.ArrayLike,
    side: Side = "primal",
    norm: NormSpec | None = None,
    **context: Unpack[CalculusContext],
) -> SqfOutput:
    """Square function of x: columns sqrt(w_j) f(t_j, A) x over the kernel's grid.

    One contour sweep (resolvents or Gauss-Cauchy kernels at every contour
    node, applied to x) serves all grid nodes. The dual side uses the
    conjugated kernel at A^*, giving sqrt(w_j) f(t_j, A)^* x.
    """
    x = as_cvector(x)
    B = calculus_matrix(kernel, A)
    if B.shape[0] != x.size:
        raise DimensionMismatchError(f"A is {B.shape} but x has {x.size} entries")

    match side:
        case "primal":
            active = kernel
        case "dual":
            active, B = kernel.conjugate(), B.conj().T
        case unknown:
            raise ValueError(f"Unknown side: {unknown}")

    context = context or kernel.context()
    _, _, sweep = use_strip_operator(B)
    contour, stack, _, apply_to = sweep(active.region(), **context)
    stack()

    def block(rows: range) -> npt.NDArray[np.complex128]:
        indices = np.arange(rows.start, rows.stop)
        return apply_to(active.values(contour.nodes, indices), x)

    map = use_map(context["num_workers"])
    values = np.concatenate(map(block, chunked(kernel.grid.size, CHUNK_SIZE)), axis=0)

    return SqfOutput(
        operator=FiniteRankOp(
            (values * kernel.grid.sqrt_weights[:, None]).T, norm or hilbert_space(), kernel.grid
        ),
        side=side,
        kernel=kernel.name,
        a_digest=digest(as_cmatrix(A)),
    )


def sqfun_norm(
    output: SqfOutput, norm: NormSpec | None = None, **context: Unpack[GammaNormContext]
) -> GammaEstimate:
    operator = output.operator if norm is None else output.with_norm(norm)
    return gamma_norm(operator, **(context or with_hilbert_exact()))


def spot_check_columns(
    output: SqfOutput,
    kernel: KernelFn,
    A: npt.ArrayLike,
    x: npt.ArrayLike,
    indices: tuple[int, ...] | None = None,
    **context: Unpack[CalculusContext],
) -> float:
    """Largest deviation of sampled columns from sqrt(w_j) f(t_j, A) x computed one by one."""
    B = calculus_matrix(kernel, A)
    x = as_cvector(x)
    size = kernel.grid.size
    indices = indices or (0, size // 3, size // 2, size - 1)
    context = context or kernel.context()

    errors = []
    for j in indices:
        f_j = calculus_apply(kernel.at(j), B, **context)
        column = f_j @ x if output.side == "primal" else f_j.conj().T @ x
        expected = kernel.grid.sqrt_weights[j] * column
        errors.append(float(np.max(np.abs(output.matrix[:, j] - expected))))
    return max(errors)
