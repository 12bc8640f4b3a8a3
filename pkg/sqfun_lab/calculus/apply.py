import warnings
from typing_extensions import Unpack

import numpy as np
import numpy.typing as npt
import scipy.linalg

from sqfun_lab.calculus.context import CalculusContext, RegularizedMethod, with_regularized
from sqfun_lab.calculus.contours import (
    elementary_contour,
    gauss_cauchy_contour,
    regularized_contour,
)
from sqfun_lab.calculus.functions import regularizer
from sqfun_lab.calculus.models import HolFn, StripOperator, admissible_height, strip_operator
from sqfun_lab.calculus.sweep import use_contour_sweep
from sqfun_lab.errors import NotElementaryError, ParameterRangeError
from sqfun_lab.linalg.models import CMatrix, as_cmatrix

# Relative change between n and 2n above which the regularized result is flagged.
DOUBLING_TOLERANCE = 1e-8


def calculus_apply(
    f: HolFn, operator: StripOperator | npt.ArrayLike, **context: Unpack[CalculusContext]
) -> CMatrix:
    """f(A) by the method in ``context``.

    elementary: (1/2 pi i) contour integral of f(z) (z - A)^{-1} over the
    boundary of the strip of height omega'. regularized: e_n(A)^{-1} (e_n f)(A),
    both factors elementary. gauss-cauchy: the contour integral of
    f(z) exp(-(z - A)^2) (z - A)^{-1}, valid for every bounded f.
    """
    if not isinstance(operator, StripOperator):
        operator = strip_operator(operator)
    method, num_workers = context["calculus_method"], context["num_workers"]

    match method["calculus_variant"]:
        case "elementary":
            if f.class_tag != "elementary":
                raise NotElementaryError(f"{f.name} is tagged {f.class_tag}, not elementary")
            contour = elementary_contour(operator, f, method)
            _, integrate, _ = use_contour_sweep(operator, contour, "resolvent", num_workers)
            return integrate(f(contour.nodes))
        case "regularized":
            return _regularized(f, operator, method, num_workers)
        case "gauss-cauchy":
            contour = gauss_cauchy_contour(operator, f, method)
            _, integrate, _ = use_contour_sweep(operator, contour, "gauss-cauchy", num_workers)
            return integrate(f(contour.nodes))
        case unknown:
            raise ValueError(f"Unknown calculus method: {unknown}")


def regularized_terms(
    f: HolFn, operator: StripOperator, height: float, n: float, nodes: int, num_workers: int = 1
) -> tuple[CMatrix, CMatrix]:
    """(e_n(A), (e_n f)(A)) by elementary calculus on one shared contour."""
    contour = regularized_contour(operator, height, n, nodes)
    _, integrate, _ = use_contour_sweep(operator, contour, "resolvent", num_workers)
    e_n = regularizer(n)(contour.nodes)
    both = integrate(np.stack([e_n, e_n * f(contour.nodes)]))
    return both[0], both[1]


def _regularized(
    f: HolFn, operator: StripOperator, method: RegularizedMethod, num_workers: int
) -> CMatrix:
    height = admissible_height(operator, f, method.get("contour_height"))

    def at(n: float) -> CMatrix:
        e_n, e_n_f = regularized_terms(f, operator, height, n, method["nodes"], num_workers)
        return np.linalg.solve(e_n, e_n_f)

    result = at(method["n"])
    if method["check_doubling"]:
        doubled = at(2 * method["n"])
        change = np.linalg.norm(result - doubled, 2) / max(np.linalg.norm(doubled, 2), 1e-300)
        if change > DOUBLING_TOLERANCE:
            warnings.warn(
                f"Regularized calculus of {f.name} changed by {change:.2e} from n to 2n",
                RuntimeWarning,
                stacklevel=2,
            )
    return result


def sector_calculus(
    S: npt.ArrayLike, f: HolFn, **context: Unpack[CalculusContext]
) -> CMatrix:
    """f(S) = (f o exp)(log S) for S with spectrum off (-inf, 0]."""
    S = as_cmatrix(S)
    if not f.sector:
        raise ValueError(f"{f.name} is not a sector function")
    eigenvalues = np.linalg.eigvals(S)
    if np.any(np.abs(eigenvalues) == 0) or np.any(
        (eigenvalues.real <= 0) & (np.abs(eigenvalues.imag) <= 1e-14 * np.abs(eigenvalues))
    ):
        raise ParameterRangeError("Spectrum of S touches (-inf, 0]")
    if np.max(np.abs(np.angle(eigenvalues))) >= f.strip_half_height:
        raise ParameterRangeError(
            f"Spectral angle of S exceeds the sector half-angle {f.strip_half_height:.4g}"
        )

    log_s = scipy.linalg.logm(S)
    return calculus_apply(f.compose_exp(), strip_operator(log_s), **(context or with_regularized()))


def scalar_calculus(f: HolFn, A: npt.ArrayLike) -> tuple[CMatrix, float]:
    """P diag(f(lambda)) P^{-1} and cond(P) for diagonalizable A."""
    eigenvalues, P = np.linalg.eig(as_cmatrix(A))
    return (P * f(eigenvalues)) @ np.linalg.inv(P), float(np.linalg.cond(P))

