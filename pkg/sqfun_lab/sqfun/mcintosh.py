import math

import numpy as np
import numpy.typing as npt

from sqfun_lab.calculus.diagnostics import elementary_diagnostics
from sqfun_lab.calculus.models import HolFn
from sqfun_lab.errors import DivergenceError, ParameterRangeError
from sqfun_lab.grids.make import make_grid
from sqfun_lab.grids.models import DiscreteHilbert
from sqfun_lab.linalg.models import as_cmatrix, as_cvector
from sqfun_lab.sqfun.build import sqfun_matrix
from sqfun_lab.sqfun.kernels import dilation_kernel

# Grid for a spectrum at 1; spectral_grid stretches the ends and keeps the log step.
DEFAULT_LOWER, DEFAULT_UPPER, DEFAULT_COUNT = 1e-9, 50.0, 1601
RECONSTRUCTION_TOLERANCE = 1e-6
_LOG_STEP = math.log(DEFAULT_UPPER / DEFAULT_LOWER) / (DEFAULT_COUNT - 1)


def spectral_grid(eigenvalues: npt.ArrayLike) -> DiscreteHilbert:
    """mult-haar grid reaching DEFAULT_LOWER / |lambda|_max and DEFAULT_UPPER / Re lambda_min.

    Both ends also cover [DEFAULT_LOWER, DEFAULT_UPPER], where the scalar
    constant is integrated.
    """
    eigenvalues = np.atleast_1d(np.asarray(eigenvalues, dtype=np.complex128))
    moduli = np.abs(eigenvalues)
    if np.min(moduli) == 0:
        raise ParameterRangeError("S is singular")
    reach = np.where(eigenvalues.real > 0, eigenvalues.real, moduli)
    lower = DEFAULT_LOWER / max(float(np.max(moduli)), 1.0)
    upper = DEFAULT_UPPER / min(float(np.min(reach)), 1.0)
    count = int(math.ceil(math.log(upper / lower) / _LOG_STEP)) + 1
    return make_grid("mult-haar", lower=lower, upper=upper, count=count)


def mcintosh_reconstruct(
    phi: HolFn,
    psi: HolFn,
    S: npt.ArrayLike,
    x: npt.ArrayLike,
    grid: DiscreteHilbert | None = None,
) -> tuple[npt.NDArray[np.complex128], complex]:
    """int_0^inf phi(tS) psi(tS) x dt/t and c = int_0^inf phi(t) psi(t) dt/t.

    The product must decay at 0 and infinity along rays; this is checked on
    the log scale before integrating. For S with positive spectrum the
    result must equal c x within RECONSTRUCTION_TOLERANCE, otherwise the
    truncated integral raises DivergenceError.
    """
    product = phi * psi
    diagnostics = elementary_diagnostics(
        product.compose_exp(), product.strip_half_height / 2, half_width=60.0, nodes=2001
    )
    if not diagnostics.passed:
        raise DivergenceError(f"int {product.name}(t) dt/t does not converge")

    S, x = as_cmatrix(S), as_cvector(x)
    eigenvalues = np.linalg.eigvals(S)
    grid = grid or spectral_grid(eigenvalues)

    columns = sqfun_matrix(dilation_kernel(product, grid), S, x).matrix
    result = columns @ grid.sqrt_weights
    constant = complex(np.sum(grid.weights * product(grid.nodes)))

    if np.all(np.abs(eigenvalues.imag) <= 1e-12) and np.all(eigenvalues.real > 0):
        error = float(np.linalg.norm(result - constant * x))
        scale = RECONSTRUCTION_TOLERANCE * max(1.0, abs(constant)) * float(np.linalg.norm(x))
        if error > scale:
            raise DivergenceError(
                f"Reconstruction differs from c x by {error:.2e} on [{grid.nodes[0]:.2e}, {grid.nodes[-1]:.2e}]"
            )
    return result, constant
