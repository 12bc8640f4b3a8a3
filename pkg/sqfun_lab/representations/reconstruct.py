import math
from typing_extensions import Unpack

import numpy as np
import numpy.typing as npt

from sqfun_lab.calculus.functions import stable_sech
from sqfun_lab.calculus.models import HolFn
from sqfun_lab.errors import ContourMarginError, ParameterRangeError
from sqfun_lab.grids.make import keyhole_contour, line_nodes, make_grid, strip_contour
from sqfun_lab.grids.models import Contour
from sqfun_lab.multiprocess.pool import chunked, use_map
from sqfun_lab.representations.context import (
    GaussCauchyFormula,
    LaplaceFormula,
    PoissonFormula,
    ReconstructContext,
)
from sqfun_lab.representations.models import ReprReport, pairs

# sech(pi s / 2 omega) < 1e-12 once |s| exceeds this many multiples of omega.
_POISSON_TAIL = 18.0
# e^{Re w} < e^{-36} at the far end of the keyhole rays.
_KEYHOLE_DECAY = 36.0
_MAX_STEP = 0.05
_STEPS_PER_POLE_DISTANCE = 6.0
_T_CHUNK = 64


def reconstruct(
    u: HolFn, z_points: npt.ArrayLike, **context: Unpack[ReconstructContext]
) -> ReprReport:
    """Rebuild u at ``z_points`` from one of its integral representations."""
    z = np.atleast_1d(np.asarray(z_points, dtype=np.complex128))
    method = context["repr_method"]

    match method["repr_variant"]:
        case "gauss-cauchy":
            return _gauss_cauchy(u, z, method)
        case "poisson":
            return _poisson(u, z, method)
        case "laplace":
            return _laplace(u, z, method, context["num_workers"])
        case unknown:
            raise ValueError(f"Unknown representation: {unknown}")


def _report(
    method: str,
    u: HolFn,
    z: npt.NDArray[np.complex128],
    values: npt.NDArray[np.complex128],
    worst_of: npt.NDArray[np.complex128] | None = None,
    **extra,
) -> ReprReport:
    """``worst_of``: a second reconstruction whose error also counts."""
    reference = u(z)
    error = np.max(np.abs(values - reference))
    if worst_of is not None:
        error = max(error, np.max(np.abs(worst_of - reference)))
    return ReprReport(
        method=method,
        points=pairs(z),
        reconstructed=pairs(values),
        reference=pairs(reference),
        max_error=float(error),
        **extra,
    )


def _strip_inputs(u: HolFn, z: npt.NDArray[np.complex128], omega: float) -> float:
    """Distance available to the quadrature: from z to the lines and from the lines to u's poles."""
    if u.sector:
        raise ParameterRangeError(f"{u.name} is a sector function, expected a strip function")
    if omega >= u.strip_half_height:
        raise ContourMarginError(
            f"Lines |Im z| = {omega:g} leave the strip of {u.name} (half-height {u.strip_half_height:g})"
        )
    inside = omega - float(np.max(np.abs(z.imag)))
    if inside <= 0:
        raise ParameterRangeError(f"Points must satisfy |Im z| < {omega:g}")
    return min(inside, u.strip_half_height - omega)


def gauss_cauchy_line_contour(
    u: HolFn, z: npt.NDArray[np.complex128], method: GaussCauchyFormula
) -> Contour:
    distance = _strip_inputs(u, z, method["omega"])
    step = min(method["step"], distance / _STEPS_PER_POLE_DISTANCE)
    half_width = float(np.max(np.abs(z.real))) + method["tail"]
    return strip_contour(method["omega"], half_width, int(math.ceil(2 * half_width / step)) + 1)


def _gauss_cauchy(u: HolFn, z: npt.NDArray[np.complex128], method: GaussCauchyFormula) -> ReprReport:
    """u(z) = (1/2 pi i) int_{dSt_omega} u(w) e^{-(w - z)^2} / (w - z) dw."""
    contour = gauss_cauchy_line_contour(u, z, method)
    w, dw = contour.nodes, contour.weights
    diff = w[None, :] - z[:, None]
    values = (np.exp(-(diff**2)) / diff * u(w)[None, :]) @ dw / (2j * math.pi)
    return _report("gauss-cauchy", u, z, values, details={"nodes": contour.size})


def poisson_kernel(omega: float, zeta: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """(pi / 2 omega) / cosh(pi zeta / 2 omega)."""
    a = math.pi / (2 * omega)
    return a * stable_sech(a * np.asarray(zeta, dtype=np.complex128))


def poisson_factors(
    omega: float, alpha: float, zeta: npt.ArrayLike
) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.complex128]]:
    """(f, g) with f g = poisson_kernel(omega, .).

    f = (alpha/omega) cosh(pi zeta / 2 alpha) / cosh(pi zeta / 2 omega) is bounded
    for alpha > omega, g = (pi / 2 alpha) / cosh(pi zeta / 2 alpha).
    """
    if alpha <= omega:
        raise ParameterRangeError(f"Factor parameter must exceed omega={omega:g}, got {alpha}")
    zeta = np.asarray(zeta, dtype=np.complex128)
    a, b = math.pi / (2 * alpha), math.pi / (2 * omega)
    f = alpha / omega * np.exp(_log_cosh(a * zeta) - _log_cosh(b * zeta))
    g = a * stable_sech(a * zeta)
    return f, g


def _log_cosh(z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
    z = np.where(z.real < 0, -z, z)
    return z + np.log1p(np.exp(-2 * z)) - math.log(2)


def _poisson(u: HolFn, z: npt.NDArray[np.complex128], method: PoissonFormula) -> ReprReport:
    """u(z) = (1/2 pi) int K(z + s) (u(i omega - s) + u(-i omega - s)) ds.

    The factored form substitutes s -> -s and splits K = f g:
    u(z) = (1/2 pi) int m(s) f(z - s) g(z - s) ds, m(s) = u(i omega + s) + u(-i omega + s).
    """
    omega = method["omega"]
    distance = _strip_inputs(u, z, omega)
    step = min(_MAX_STEP, distance / _STEPS_PER_POLE_DISTANCE)
    half_width = _POISSON_TAIL * omega + float(np.max(np.abs(z.real)))
    s, ds = line_nodes(half_width, int(math.ceil(2 * half_width / step)) + 1)

    boundary = u(1j * omega - s) + u(-1j * omega - s)
    values = poisson_kernel(omega, z[:, None] + s[None, :]) @ (boundary * ds) / (2 * math.pi)
    details: dict = {"nodes": int(s.size)}
    if "factor_alpha" not in method:
        return _report("poisson", u, z, values, details=details)

    alpha = method["factor_alpha"]
    multiplier = u(1j * omega + s) + u(-1j * omega + s)
    zeta = z[:, None] - s[None, :]
    f, g = poisson_factors(omega, alpha, zeta)
    factored = (f * g) @ (multiplier * ds) / (2 * math.pi)
    details |= {
        "factor_alpha": alpha,
        "factored": pairs(factored),
        "factored_error": float(np.max(np.abs(factored - u(z)))),
        "factorization_error": float(np.max(np.abs(f * g - poisson_kernel(omega, zeta)))),
        "multiplier_sup": float(np.max(np.abs(multiplier))),
    }
    return _report("poisson", u, z, values, details=details, worst_of=factored)


def laplace_contour(omega: float, count: int) -> Contour:
    return keyhole_contour(omega, 1.0, 1.0 + _KEYHOLE_DECAY / abs(math.cos(omega)), count)


def laplace_multiplier(
    u: HolFn,
    t: npt.ArrayLike,
    alpha: float,
    beta: float,
    omega: float,
    contour_count: int = 1601,
    num_workers: int = 1,
) -> tuple[npt.NDArray[np.complex128], float]:
    """m_u(t) = (2^s / 2 pi i) int_Gamma u(w / 2t) w^{-s} e^w dw with s = alpha + beta.

    Gamma is the keyhole around the negative real axis with arms at arg w = +-omega
    and inner radius 1. Also returns the bound
    (2^s / 2 pi) int_Gamma e^{Re w} |w|^{-s} |dw| sup |u|.
    """
    _check_laplace(u, alpha, beta, omega)
    s_exp = alpha + beta
    contour = laplace_contour(omega, contour_count)
    w, dw = contour.nodes, contour.weights
    weight = np.power(w, -s_exp) * np.exp(w) * dw
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))

    def block(rows: range) -> tuple[npt.NDArray[np.complex128], float]:
        samples = u(w[None, :] / (2 * t[rows.start : rows.stop, None]))
        return samples @ weight, float(np.max(np.abs(samples)))

    blocks = use_map(num_workers)(block, chunked(t.size, _T_CHUNK))
    scale = 2.0**s_exp / (2 * math.pi)
    multiplier = np.concatenate([values for values, _ in blocks]) * scale / 1j
    sup_u = max(sup for _, sup in blocks)
    bound = scale * float(np.sum(np.exp(w.real) * np.abs(w) ** (-s_exp) * np.abs(dw))) * sup_u
    return multiplier, bound


def _check_laplace(u: HolFn, alpha: float, beta: float, omega: float) -> None:
    if alpha <= 0 or beta <= 0:
        raise ParameterRangeError(f"alpha and beta must be positive, got {alpha}, {beta}")
    if not u.sector:
        raise ParameterRangeError(f"{u.name} is a strip function, expected a sector function")
    if not math.pi / 2 < omega < math.pi:
        raise ParameterRangeError(f"Keyhole angle must lie in (pi/2, pi), got {omega}")
    if omega >= u.strip_half_height:
        raise ContourMarginError(
            f"Keyhole angle {omega:g} leaves the sector of {u.name}"
            f" (half-angle {u.strip_half_height:g})"
        )


def _laplace(
    u: HolFn, z: npt.NDArray[np.complex128], method: LaplaceFormula, num_workers: int
) -> ReprReport:
    """u(z) = int_0^inf m_u(t) (tz)^alpha (tz)^beta e^{-2tz} dt / t for Re z > 0."""
    if np.any(z.real <= 0):
        raise ParameterRangeError("Laplace reconstruction needs Re z > 0")
    alpha, beta = method["alpha"], method["beta"]
    grid = make_grid(
        "mult-haar", lower=method["t_lower"], upper=method["t_upper"], count=method["t_count"]
    )
    t = grid.nodes.astype(np.float64)
    multiplier, bound = laplace_multiplier(
        u, t, alpha, beta, method["omega"], method["contour_count"], num_workers
    )

    s_exp = alpha + beta
    profile = np.exp(-2 * np.outer(z, t)) * (grid.weights * t**s_exp * multiplier)[None, :]
    values = np.power(z, s_exp) * profile.sum(axis=1)
    sup = float(np.max(np.abs(multiplier)))
    return _report(
        "laplace",
        u,
        z,
        values,
        multiplier_nodes=t.tolist(),
        multiplier=pairs(multiplier),
        multiplier_sup=sup,
        multiplier_bound=bound,
        details={"alpha": alpha, "beta": beta, "within_bound": sup <= bound * (1 + 1e-9)},
    )
