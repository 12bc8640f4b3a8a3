import math

import numpy as np
import numpy.typing as npt
from scipy.sparse.linalg import svds

from sqfun_lab.calculus.models import HolFn
from sqfun_lab.errors import ContourMarginError, ParameterRangeError
from sqfun_lab.grids.make import strip_contour
from sqfun_lab.grids.models import Contour
from sqfun_lab.grids.pv import interior_indices, pv_matrix
from sqfun_lab.reports import CheckReport, digest

# Nodes per unit distance to the contour below which the point is too close.
_MIN_STEPS_TO_CONTOUR = 4.0


def singular_cauchy_matrix(f: HolFn, contour: Contour, rows: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """(T_f h)(lambda) = f(lambda) h(lambda) / 2 + (1/2 pi i) p.v. int f(w) h(w) / (lambda - w) dw.

    Rows are contour nodes; columns act on node values of h.
    """
    rows = np.asarray(rows, dtype=np.intp)
    values = f(contour.nodes)
    matrix = pv_matrix(contour, rows) * values[None, :] / (2j * math.pi)
    matrix[np.arange(rows.size), rows] += values[rows] / 2
    return matrix


def singular_cauchy(
    f: HolFn,
    omega: float,
    z_points: npt.ArrayLike,
    half_width: float = 40.0,
    step: float = 0.05,
    window: float = 4.0,
    norm_half_width: float = 20.0,
    norm_step: float = 0.1,
    tol: float = 1e-3,
) -> CheckReport:
    """Checks f(z) / (lambda - z) = T_f g(., z)(lambda) with g(w, z) = 1 / (w - z).

    lambda runs over contour nodes with |Re lambda| <= window. The norm of
    T_f on L^2(dSt_omega) is estimated on a coarser grid at N and 2N nodes;
    it should stay below (1/2 + |S|) sup |f|, S the p.v. part for f = 1.
    """
    if omega >= f.strip_half_height:
        raise ContourMarginError(
            f"Lines |Im z| = {omega:g} leave the strip of {f.name} (half-height {f.strip_half_height:g})"
        )
    z = np.atleast_1d(np.asarray(z_points, dtype=np.complex128))
    if np.any(omega - np.abs(z.imag) < _MIN_STEPS_TO_CONTOUR * step):
        raise ParameterRangeError(f"Points must stay {_MIN_STEPS_TO_CONTOUR * step:g} inside |Im z| < {omega:g}")

    contour = strip_contour(omega, half_width, int(round(2 * half_width / step)) + 1)
    interior = interior_indices(contour)
    rows = interior[np.abs(contour.nodes[interior].real) <= window]
    lam, w = contour.nodes[rows], contour.nodes

    applied = singular_cauchy_matrix(f, contour, rows) @ (1 / (w[:, None] - z[None, :]))
    expected = f(z)[None, :] / (lam[:, None] - z[None, :])
    residual = float(np.max(np.abs(applied - expected)))

    coarse = int(round(2 * norm_half_width / norm_step)) + 1
    norm, norm_doubled = (
        _operator_norm(f, strip_contour(omega, norm_half_width, count)) for count in (coarse, 2 * coarse - 1)
    )
    pv_part = _operator_norm(None, strip_contour(omega, norm_half_width, coarse))
    sup_f = float(np.max(np.abs(f(w))))
    constant = 0.5 + pv_part
    return CheckReport(
        op="singular-cauchy",
        inputs_digest=digest(omega, z, half_width, step),
        value=residual,
        expected=0.0,
        bound=constant * sup_f,
        tol=tol,
        passed=residual <= tol,
        details={
            "function": f.name,
            "rows": int(rows.size),
            "norm_estimate": norm,
            "norm_estimate_doubled": norm_doubled,
            "norm_change": abs(norm_doubled - norm) / max(norm_doubled, 1e-300),
            "constant": constant,
            "within_bound": norm <= constant * sup_f * (1 + 1e-6),
        },
    )


def _operator_norm(f: HolFn | None, contour: Contour) -> float:
    """Largest singular value on interior nodes in sqrt|dw|-scaled coordinates.

    With ``f=None`` only the p.v. part (1/2 pi i) p.v. int h(w) / (lambda - w) dw.
    """
    interior = interior_indices(contour)
    if f is None:
        matrix = pv_matrix(contour, interior) / (2j * math.pi)
    else:
        matrix = singular_cauchy_matrix(f, contour, interior)
    scale = np.sqrt(np.abs(contour.weights[interior]))
    scaled = scale[:, None] * matrix[:, interior] / scale[None, :]
    return float(svds(scaled, k=1, return_singular_vectors=False)[0])
