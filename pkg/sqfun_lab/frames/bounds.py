from typing_extensions import Unpack

import numpy as np
import numpy.typing as npt

from sqfun_lab.calculus.diagnostics import cauchy_derivatives
from sqfun_lab.calculus.models import HolFn
from sqfun_lab.errors import ContourMarginError, NotElementaryError, ParameterRangeError
from sqfun_lab.frames.context import L1Context, SetTarget, ShiftRangeTarget
from sqfun_lab.frames.models import FrameBounds, FrameSpec, L1Bound
from sqfun_lab.linalg.factor import matrix_factor
from sqfun_lab.linalg.models import CMatrix

# sigma_min below this fraction of sigma_max counts as A = 0.
_RANK_TOLERANCE = 1e-12


def frame_bounds(frame: FrameSpec, trials: int = 256, seed: int = 0) -> FrameBounds:
    """Frame constants A <= ||R h|| / ||h|| <= B.

    Exact values are the extreme singular values of R. The sampled values
    come from seeded random unit vectors together with the extremal right
    singular vectors, so they match the exact ones up to rounding.
    """
    if frame.size == 0:
        raise ParameterRangeError("Frame has no vectors")
    svd = matrix_factor(frame.R, "svd")
    tau = np.zeros(frame.dim)
    tau[: svd.tau.size] = svd.tau[: frame.dim]
    lower, upper = float(tau[-1]), float(tau[0])

    rng = np.random.default_rng(seed)
    draws = rng.standard_normal((frame.dim, trials)) + 1j * rng.standard_normal((frame.dim, trials))
    probes = np.concatenate([draws, svd.V[:, [0, frame.dim - 1]]], axis=1)
    probes /= np.linalg.norm(probes, axis=0)
    ratios = np.linalg.norm(frame.R @ probes, axis=0)
    return FrameBounds(
        lower=lower,
        upper=upper,
        sampled_lower=float(ratios.min()),
        sampled_upper=float(ratios.max()),
        degenerate=lower <= _RANK_TOLERANCE * upper,
    )


def l1_frame_bound(**context: Unpack[L1Context]) -> L1Bound:
    target = context["l1_target"]
    match target["l1_variant"]:
        case "operator-hs":
            return _operator_hs(target["T"])
        case "set":
            return _set(target)
        case "shift-range":
            return _shift_range(target)
        case unknown:
            raise ValueError(f"Unknown l1 target: {unknown}")


def _operator_hs(T: CMatrix) -> L1Bound:
    """T = sum tau_n <., v_n> u_n: in the frame (u_n) the image of the unit ball
    has coefficient sums sum tau_n |<f, v_n>| <= ||tau||_2.
    """
    svd = matrix_factor(T, "svd")
    U = svd.U
    frame = FrameSpec(U, U.conj().T, U, tuple(f"u{n}" for n in range(U.shape[1])))
    hs = float(np.linalg.norm(svd.tau))
    weights = svd.tau / hs if hs > 0 else svd.tau
    maximizer = svd.V[:, : svd.tau.size] @ weights
    return L1Bound("operator-hs", hs, frame=frame, maximizer=maximizer)


def _set(target: SetTarget) -> L1Bound:
    """||L|| sup_x sum_alpha |(R x)_alpha|: an upper estimate of |M|_1 for this frame."""
    frame = target["frame"]
    if not target["samples"]:
        raise ParameterRangeError("Set bound needs at least one sample")
    coefficients = frame.R @ np.stack(target["samples"], axis=1)
    l1 = np.sum(np.abs(coefficients), axis=0)
    return L1Bound("set", float(np.linalg.norm(frame.L, 2) * l1.max()), frame=frame, profile=l1)


def _shift_range(target: ShiftRangeTarget) -> L1Bound:
    """sup_z int (|psi| + |psi'| + |psi''|)(t + z) dt over the z points."""
    psi, omega, omega_prime = target["psi"], target["omega"], target["omega_prime"]
    if psi.class_tag != "elementary":
        raise NotElementaryError(f"{psi.name} is tagged {psi.class_tag}, not elementary")
    if not 0 < omega < omega_prime:
        raise ParameterRangeError(f"Need 0 < omega < omega', got {omega}, {omega_prime}")
    if omega_prime > psi.strip_half_height:
        raise ContourMarginError(
            f"omega' = {omega_prime:g} leaves the strip of {psi.name} (half-height {psi.strip_half_height:g})"
        )
    z = target["z_points"]
    if np.any(np.abs(z.imag) > omega):
        raise ParameterRangeError(f"Shift points must satisfy |Im z| <= {omega:g}")

    grid = target["grid"]
    grid.require("lebesgue-line")
    radius = (omega_prime - omega) / 2
    profile = np.array([w12_integral(psi, grid.nodes + shift, grid.weights, radius) for shift in z])
    return L1Bound("shift-range", float(profile.max()), profile=profile)


def w12_integral(
    psi: HolFn, points: npt.NDArray[np.complex128], weights: npt.NDArray[np.float64], radius: float
) -> float:
    """sum_j w_j (|psi| + |psi'| + |psi''|)(points_j)."""
    first, second = cauchy_derivatives(psi, points, radius)
    return float(np.sum(weights * (np.abs(psi(points)) + np.abs(first) + np.abs(second))))
