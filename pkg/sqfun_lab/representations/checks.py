import math
from typing_extensions import Unpack

import numpy as np
import numpy.typing as npt
import scipy.linalg
from scipy.special import beta as beta_function
from scipy.special import expit, gamma

from sqfun_lab.calculus.apply import calculus_apply
from sqfun_lab.calculus.context import CalculusContext, with_gauss_cauchy
from sqfun_lab.calculus.contours import gauss_cauchy_contour
from sqfun_lab.calculus.models import HolFn, strip_operator
from sqfun_lab.errors import DimensionMismatchError, MethodMismatchError, ParameterRangeError
from sqfun_lab.grids.fourier import discrete_fourier
from sqfun_lab.grids.make import line_nodes, make_grid
from sqfun_lab.grids.models import DiscreteHilbert
from sqfun_lab.linalg.models import as_cvector
from sqfun_lab.multiprocess.pool import chunked, use_map
from sqfun_lab.reports import CheckReport, digest
from sqfun_lab.representations.reconstruct import poisson_kernel

MIN_EXPONENT = 0.1
_FOURIER_HALF_WIDTH = 20.0
_FOURIER_STEPS = 8.0
# sigma = expit(2x) on this x-range covers (0, 1) to double precision for exponents >= 0.1.
_BETA_HALF_WIDTH = 30.0


def fourier_pair_check(
    omega: float,
    grid: DiscreteHilbert | None = None,
    t_points: npt.ArrayLike | None = None,
    tol: float = 1e-6,
) -> CheckReport:
    """(1/2 pi) int (pi / omega) sech(pi s / 2 omega) e^{ist} ds = sech(omega t).

    The integrand is twice the Poisson kernel: u = e^{izt} in the Poisson
    formula gives the factor 2 cosh(omega t) on the boundary.
    """
    if omega <= 0:
        raise ParameterRangeError(f"omega must be positive, got {omega}")
    if grid is None:
        half_width = _FOURIER_HALF_WIDTH * omega
        count = int(math.ceil(2 * half_width * _FOURIER_STEPS / omega)) + 1
        grid = make_grid("lebesgue-line", half_width=half_width, count=count)
    t = (
        np.linspace(-6 / omega, 6 / omega, 121)
        if t_points is None
        else np.atleast_1d(np.asarray(t_points, dtype=np.float64))
    )

    transform = discrete_fourier(grid, 2 * poisson_kernel(omega, grid.nodes), t, tol=tol)
    computed = transform.values / (2 * math.pi)
    expected = 1 / np.cosh(omega * t)
    error = float(np.max(np.abs(computed - expected)))
    return CheckReport(
        op="fourier-pair",
        inputs_digest=digest(omega, grid.nodes, t),
        value=error,
        expected=0.0,
        tol=tol,
        passed=error <= tol and transform.edge_decay_ok,
        details={"omega": omega, "nodes": grid.size, "edge_decay_ok": transform.edge_decay_ok},
    )


def power_kernel(alpha: float, t: npt.ArrayLike, z: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """f_alpha(t, z) = t^{alpha - 1/2} z^alpha e^{-tz}."""
    t = np.asarray(t, dtype=np.float64)
    z = np.asarray(z, dtype=np.complex128)
    return t ** (alpha - 0.5) * z**alpha * np.exp(-t * z)


def exponent_improvement_check(
    alpha: float,
    beta: float,
    z_points: npt.ArrayLike = (0.5, 1.0, 2.0 + 1.0j),
    t_points: npt.ArrayLike | None = None,
    tol: float = 1e-6,
    count: int = 801,
) -> CheckReport:
    """Checks the two facts behind the exponent improvement.

    T f(s, t) = (t + s)^{-1/2} f(t + s) is an isometry L^2(R+) -> L^2(R+^2), and
    (1/sqrt t) int_0^t f_alpha(t - s, z) f_beta(s, z) ds
    = B(alpha + 1/2, beta + 1/2) t^{alpha + beta - 1/2} z^{alpha + beta} e^{-tz}.
    """
    if alpha < MIN_EXPONENT or beta < MIN_EXPONENT:
        raise ParameterRangeError(
            f"Exponents below {MIN_EXPONENT} need finer quadrature, got {alpha}, {beta}"
        )
    z = np.atleast_1d(np.asarray(z_points, dtype=np.complex128))
    if np.any(z.real <= 0):
        raise ParameterRangeError("Points must satisfy Re z > 0")
    t = (
        np.geomspace(0.1, 10.0, 25)
        if t_points is None
        else np.atleast_1d(np.asarray(t_points, dtype=np.float64))
    )

    isometry_defect = _isometry_defect(count)
    convolution_error = _convolution_error(alpha, beta, t, z)
    value = max(isometry_defect, convolution_error)
    return CheckReport(
        op="exponent-improvement",
        inputs_digest=digest(alpha, beta, z, t),
        value=value,
        expected=0.0,
        tol=tol,
        passed=value <= tol,
        details={
            "isometry_defect": isometry_defect,
            "convolution_error": convolution_error,
            "beta_constant": float(beta_function(alpha + 0.5, beta + 0.5)),
        },
    )


# (power, rate, coefficient): c r^k e^{-a r}, all vanishing fast enough at 0 for a truncated grid.
_ISOMETRY_DICTIONARY = ((1.0, 1.0, 1.0), (2.0, 1.0, 1.0), (1.0, 2.0, 1.0 + 1.0j), (1.5, 0.5, -1.0j))


def _isometry_defect(count: int) -> float:
    """max |<Tf, Tg> - <f, g>| over the dictionary, Tf on a product mult-haar grid."""
    grid = make_grid("mult-haar", lower=1e-8, upper=40.0, count=count)
    r = grid.nodes.astype(np.float64)
    dr = grid.weights * r
    total = r[:, None] + r[None, :]
    area = np.outer(dr, dr) / total

    def sample(power: float, rate: float, coefficient: complex, at: npt.NDArray) -> npt.NDArray:
        return coefficient * at**power * np.exp(-rate * at)

    defect = 0.0
    for first in _ISOMETRY_DICTIONARY:
        for second in _ISOMETRY_DICTIONARY:
            lifted = np.sum(area * sample(*first, total) * np.conj(sample(*second, total)))
            (k1, a1, c1), (k2, a2, c2) = first, second
            exact = c1 * np.conj(c2) * gamma(k1 + k2 + 1) / (a1 + a2) ** (k1 + k2 + 1)
            defect = max(defect, abs(lifted - exact))
    return float(defect)


def _convolution_error(
    alpha: float, beta: float, t: npt.NDArray[np.float64], z: npt.NDArray[np.complex128]
) -> float:
    """Relative error of the convolution identity, s = t expit(2x) on x in [-30, 30]."""
    x, dx = line_nodes(_BETA_HALF_WIDTH, 2001)
    sigma, rest = expit(2 * x), expit(-2 * x)
    jacobian = 2 * sigma * rest * dx

    error = 0.0
    for tk in t:
        integrand = (
            power_kernel(alpha, tk * rest[:, None], z[None, :])
            * power_kernel(beta, tk * sigma[:, None], z[None, :])
        )
        convolution = tk * (jacobian @ integrand) / math.sqrt(tk)
        exact = (
            beta_function(alpha + 0.5, beta + 0.5)
            * tk ** (alpha + beta - 0.5)
            * z ** (alpha + beta)
            * np.exp(-tk * z)
        )
        error = max(error, float(np.max(np.abs(convolution - exact) / np.abs(exact))))
    return error


def cauchy_gauss_factorization_check(
    u: HolFn,
    A: npt.ArrayLike,
    x: npt.ArrayLike,
    tol: float = 1e-9,
    **context: Unpack[CalculusContext],
) -> CheckReport:
    """u(A) x against (1/2 pi i) int u(z) F(z) G(z) x dz on the Gauss-Cauchy contour.

    F(z) = e^{-(z - A)^2 / 2} (z - A)^{-1} and G(z) = e^{-(z - A)^2 / 2}, so the
    product recovers the Gauss-Cauchy kernel.
    """
    context = context or with_gauss_cauchy()
    method = context["calculus_method"]
    if method["calculus_variant"] != "gauss-cauchy":
        raise MethodMismatchError("The factorization check needs the gauss-cauchy method")
    operator = strip_operator(A)
    x = as_cvector(x)
    if x.size != operator.dim:
        raise DimensionMismatchError(f"A is {operator.A.shape} but x has {x.size} entries")

    contour = gauss_cauchy_contour(operator, u, method)
    nodes, coefficients = contour.nodes, u(contour.nodes) * contour.weights / (2j * math.pi)
    identity = np.eye(operator.dim)

    def block(rows: range) -> npt.NDArray[np.complex128]:
        shifted = nodes[rows.start : rows.stop, None, None] * identity - operator.A
        half = scipy.linalg.expm(-0.5 * (shifted @ shifted))
        g_x = half @ x[:, None]
        f_g_x = half @ np.linalg.solve(shifted, g_x)
        return coefficients[rows.start : rows.stop] @ f_g_x[..., 0]

    factored = np.sum(use_map(context["num_workers"])(block, chunked(contour.size, 256)), axis=0)
    direct = calculus_apply(u, operator, **context) @ x
    error = float(np.linalg.norm(factored - direct) / max(np.linalg.norm(direct), 1e-300))
    return CheckReport(
        op="cauchy-gauss-factorization",
        inputs_digest=digest(operator.A, x),
        value=error,
        expected=0.0,
        tol=tol,
        passed=error <= tol,
        details={"function": u.name, "nodes": contour.size},
    )
