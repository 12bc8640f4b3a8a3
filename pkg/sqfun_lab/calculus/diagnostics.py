import math

import numpy as np
import numpy.typing as npt

from sqfun_lab.calculus.models import HolFn
from sqfun_lab.errors import NotElementaryError, ParameterRangeError
from sqfun_lab.grids.make import line_nodes, strip_contour
from sqfun_lab.reports import CheckReport, complex_pair, digest

# Truncation doubling must change every line integral by less than this.
STABILITY_TOLERANCE = 0.01
CIRCLE_POINTS = 32


def cauchy_derivatives(
    f: HolFn, points: npt.ArrayLike, radius: float, count: int = CIRCLE_POINTS
) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.complex128]]:
    """f' and f'' at ``points`` from the Cauchy formula on circles of ``radius``."""
    points = np.asarray(points, dtype=np.complex128)
    theta = 2 * math.pi * np.arange(count) / count
    circle = np.exp(1j * theta)
    values = f(points[..., None] + radius * circle)
    first = np.mean(values * np.conj(circle), axis=-1) / radius
    second = 2 * np.mean(values * np.conj(circle) ** 2, axis=-1) / radius**2
    return first, second


def _line_integral(f: HolFn, height: float, half_width: float, nodes: int) -> float:
    t, w = line_nodes(half_width, nodes, "sinh")
    return float(np.sum(w * np.abs(f(t + 1j * height))))


def elementary_diagnostics(
    f: HolFn,
    omega: float,
    heights: int = 9,
    half_width: float = 1e3,
    nodes: int = 4001,
) -> CheckReport:
    """Integrability profile of f on St_omega.

    Line integrals int |f(r + is)| dr over ``heights`` levels |s| <= omega,
    each checked under doubling of the truncation; the boundary integral of
    f over the closed strip (should vanish); and the W^1_2-type profile
    sup_y int (|f| + |f'| + |f''|)(t + iy) dt.
    """
    if not 0 < omega < f.strip_half_height:
        raise ParameterRangeError(
            f"omega must lie in (0, {f.strip_half_height:.4g}) for {f.name}, got {omega}"
        )

    levels = np.linspace(-omega, omega, heights)
    line_integrals, stable = [], True
    for s in levels:
        value = _line_integral(f, s, half_width, nodes)
        doubled = _line_integral(f, s, 2 * half_width, nodes + nodes // 8)
        finite = math.isfinite(value) and math.isfinite(doubled)
        stable &= finite and abs(doubled - value) <= STABILITY_TOLERANCE * max(abs(value), 1e-300)
        line_integrals.append([float(s), value])

    boundary = strip_contour(omega, half_width, nodes, spacing="sinh", closed=True)
    boundary_integral = boundary.integrate(f(boundary.nodes))

    radius = min(0.5, (f.strip_half_height - omega) / 2)
    t, w = line_nodes(half_width, nodes, "sinh")
    profile = []
    for y in levels:
        z = t + 1j * y
        first, second = cauchy_derivatives(f, z, radius)
        profile.append([float(y), float(np.sum(w * (np.abs(f(z)) + np.abs(first) + np.abs(second))))])

    sup_bound = max(value for _, value in line_integrals)
    return CheckReport(
        op="elementary_diagnostics",
        inputs_digest=digest(np.array([omega, half_width, nodes])),
        value=sup_bound,
        passed=bool(stable),
        details={
            "function": f.name,
            "line_integrals": line_integrals,
            "sup_bound": sup_bound,
            "boundary_integral": complex_pair(boundary_integral),
            "w12_profile": profile,
            "w12_sup": max(value for _, value in profile),
            "is_elementary": bool(stable),
        },
    )


def certify_elementary(f: HolFn, omega: float | None = None) -> HolFn:
    """Tag f elementary once its diagnostics pass on St_omega."""
    if omega is None:
        omega = f.strip_half_height * 0.9 if math.isfinite(f.strip_half_height) else 1.0
    report = elementary_diagnostics(f, omega)
    if not report.passed:
        raise NotElementaryError(f"{f.name} failed the integrability test on St_{omega:g}")
    return f.with_tag("elementary")
