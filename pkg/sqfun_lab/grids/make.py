import math
from typing import Literal
from typing_extensions import NotRequired, TypedDict, Unpack

import numpy as np
import numpy.typing as npt
from scipy.special import expit

from sqfun_lab.errors import ParameterRangeError
from sqfun_lab.grids.models import Contour, ContourSegment, DiscreteHilbert, MeasureTag

Spacing = Literal["uniform", "sinh"]

_MIN_COUNT = 8
_CAP_COUNT = 64
# Softplus/tanh parameter ranges past which the graded pieces are below double precision.
_RAY_PARAMETER_FLOOR = -36.0
_ARC_PARAMETER_HALF_WIDTH = 20.0


class GridParams(TypedDict):
    count: int
    half_width: NotRequired[float]
    lower: NotRequired[float]
    upper: NotRequired[float]
    omega: NotRequired[float]
    radius: NotRequired[float]
    spacing: NotRequired[Spacing]
    scale: NotRequired[float]


def trapezoid_weights(step: float, count: int) -> npt.NDArray[np.float64]:
    weights = np.full(count, step)
    weights[[0, -1]] = step / 2
    return weights


def line_nodes(
    half_width: float, count: int, spacing: Spacing = "uniform", scale: float = 1.0
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Nodes and trapezoid weights on [-T, T], uniform or t = c sinh(x)."""
    _check_count(count)
    if half_width <= 0:
        raise ParameterRangeError(f"half_width must be positive, got {half_width}")

    match spacing:
        case "uniform":
            t = np.linspace(-half_width, half_width, count)
            return t, trapezoid_weights(2 * half_width / (count - 1), count)
        case "sinh":
            if scale <= 0:
                raise ParameterRangeError(f"scale must be positive, got {scale}")
            x_max = math.asinh(half_width / scale)
            x = np.linspace(-x_max, x_max, count)
            step = 2 * x_max / (count - 1)
            return scale * np.sinh(x), scale * np.cosh(x) * trapezoid_weights(step, count)
        case unknown:
            raise ValueError(f"Unknown spacing: {unknown}")


def make_grid(kind: MeasureTag, **params: Unpack[GridParams]) -> DiscreteHilbert:
    count = params["count"]
    _check_count(count)

    match kind:
        case "lebesgue-line":
            t, w = line_nodes(
                _require(params, "half_width"),
                count,
                params.get("spacing", "uniform"),
                params.get("scale", 1.0),
            )
            return DiscreteHilbert(t, w, "lebesgue-line")
        case "mult-haar":
            lower, upper = _require(params, "lower"), _require(params, "upper")
            if not 0 < lower < upper:
                raise ParameterRangeError(f"mult-haar needs 0 < lower < upper, got [{lower}, {upper}]")
            s = np.linspace(math.log(lower), math.log(upper), count)
            step = (math.log(upper) - math.log(lower)) / (count - 1)
            return DiscreteHilbert(np.exp(s), trapezoid_weights(step, count), "mult-haar")
        case "boundary-strip":
            return strip_contour(
                _require(params, "omega"),
                _require(params, "half_width"),
                count,
                spacing=params.get("spacing", "uniform"),
                scale=params.get("scale", 1.0),
            ).as_hilbert()
        case "boundary-keyhole":
            return keyhole_contour(
                _require(params, "omega"),
                params.get("radius", 1.0),
                _require(params, "half_width"),
                count,
            ).as_hilbert()
        case unknown:
            raise ValueError(f"Unknown grid kind: {unknown}")


def make_contour(kind: MeasureTag, closed: bool = False, **params: Unpack[GridParams]) -> Contour:
    match kind:
        case "boundary-strip":
            return strip_contour(
                _require(params, "omega"),
                _require(params, "half_width"),
                params["count"],
                spacing=params.get("spacing", "uniform"),
                scale=params.get("scale", 1.0),
                closed=closed,
            )
        case "boundary-keyhole":
            return keyhole_contour(
                _require(params, "omega"),
                params.get("radius", 1.0),
                _require(params, "half_width"),
                params["count"],
            )
        case unknown:
            raise ValueError(f"Unknown contour kind: {unknown}")


def strip_contour(
    omega: float,
    half_width: float,
    count: int,
    spacing: Spacing = "uniform",
    scale: float = 1.0,
    closed: bool = False,
) -> Contour:
    """Positively oriented boundary of {|Im z| < omega}, truncated to |Re z| <= T.

    The lower line runs left to right, the upper line right to left. With
    ``closed`` the two vertical caps at Re z = +-T are added.
    """
    if omega <= 0:
        raise ParameterRangeError(f"omega must be positive, got {omega}")
    t, w = line_nodes(half_width, count, spacing, scale)

    lower = ContourSegment(
        name="lower",
        kind="line",
        nodes=t - 1j * omega,
        weights=w.astype(np.complex128),
        origin=complex(-half_width, -omega),
        direction=1.0 + 0j,
        param=t + half_width,
        bounds=(0.0, 2 * half_width),
    )
    upper = ContourSegment(
        name="upper",
        kind="line",
        nodes=t[::-1] + 1j * omega,
        weights=-w[::-1].astype(np.complex128),
        origin=complex(half_width, omega),
        direction=-1.0 + 0j,
        param=half_width - t[::-1],
        bounds=(0.0, 2 * half_width),
    )
    segments = [lower, upper]

    if closed:
        y = np.linspace(-omega, omega, _CAP_COUNT)
        dy = trapezoid_weights(2 * omega / (_CAP_COUNT - 1), _CAP_COUNT)
        right = ContourSegment("right-cap", "cap", half_width + 1j * y, 1j * dy)
        left = ContourSegment("left-cap", "cap", -half_width + 1j * y[::-1], -1j * dy)
        segments = [lower, right, upper, left]

    return Contour(tuple(segments), "boundary-strip", omega=omega, closed=closed)


def keyhole_contour(omega: float, radius: float, outer_radius: float, count: int) -> Contour:
    """Boundary of S_omega minus the disc |z| <= r, truncated at |z| = R.

    Runs in along arg z = -omega, counterclockwise over the arc through z = r
    and out along arg z = +omega. Rays use |z| - r = log(1 + e^x), the arc
    uses theta = omega tanh(x); both are trapezoid rules in x, so nodes
    cluster toward the joints.
    """
    _check_count(count)
    if not math.pi / 2 < omega <= math.pi:
        raise ParameterRangeError(f"Keyhole angle must lie in (pi/2, pi], got {omega}")
    if not 0 < radius < outer_radius:
        raise ParameterRangeError(f"Keyhole needs 0 < r < R, got r={radius}, R={outer_radius}")

    x_max = math.log(math.expm1(outer_radius - radius))
    x = np.linspace(_RAY_PARAMETER_FLOOR, x_max, count)
    rho = radius + np.logaddexp(0.0, x)
    d_rho = expit(x) * trapezoid_weights((x_max - _RAY_PARAMETER_FLOOR) / (count - 1), count)

    down, up = np.exp(-1j * omega), np.exp(1j * omega)
    lower_ray = ContourSegment("lower-ray", "ray", (rho * down)[::-1], -(d_rho * down)[::-1])
    upper_ray = ContourSegment("upper-ray", "ray", rho * up, d_rho * up)

    s = np.linspace(-_ARC_PARAMETER_HALF_WIDTH, _ARC_PARAMETER_HALF_WIDTH, count)
    theta = omega * np.tanh(s)
    d_theta = (
        omega
        / np.cosh(s) ** 2
        * trapezoid_weights(2 * _ARC_PARAMETER_HALF_WIDTH / (count - 1), count)
    )
    arc_nodes = radius * np.exp(1j * theta)
    arc = ContourSegment("arc", "arc", arc_nodes, 1j * arc_nodes * d_theta)

    return Contour((lower_ray, arc, upper_ray), "boundary-keyhole", omega=omega, radius=radius)


def _require(params: GridParams, key: str) -> float:
    if key not in params:
        raise ParameterRangeError(f"Missing grid parameter: {key}")
    return float(params[key])  # type: ignore[literal-required]


def _check_count(count: int) -> None:
    if count < _MIN_COUNT:
        raise ParameterRangeError(f"Grids need at least {_MIN_COUNT} nodes, got {count}")
