from typing import Literal
from typing_extensions import TypedDict

import numpy as np
import numpy.typing as npt

from sqfun_lab.calculus.models import HolFn
from sqfun_lab.frames.models import FrameSpec
from sqfun_lab.grids.models import DiscreteHilbert
from sqfun_lab.linalg.models import CMatrix, as_cmatrix, as_cvector


class OperatorHsTarget(TypedDict):
    l1_variant: Literal["operator-hs"]
    T: CMatrix


class SetTarget(TypedDict):
    l1_variant: Literal["set"]
    samples: list[npt.NDArray[np.complex128]]
    frame: FrameSpec


class ShiftRangeTarget(TypedDict):
    l1_variant: Literal["shift-range"]
    psi: HolFn
    omega: float
    omega_prime: float
    grid: DiscreteHilbert
    z_points: npt.NDArray[np.complex128]


L1Target = OperatorHsTarget | SetTarget | ShiftRangeTarget


class L1Context(TypedDict):
    l1_target: L1Target


def with_operator_hs(T: npt.ArrayLike) -> L1Context:
    return {"l1_target": {"l1_variant": "operator-hs", "T": as_cmatrix(T)}}


def with_set(samples: list[npt.ArrayLike], frame: FrameSpec) -> L1Context:
    return {
        "l1_target": {
            "l1_variant": "set",
            "samples": [as_cvector(x) for x in samples],
            "frame": frame,
        }
    }


def with_shift_range(
    psi: HolFn,
    omega: float,
    omega_prime: float,
    grid: DiscreteHilbert,
    z_points: npt.ArrayLike,
) -> L1Context:
    return {
        "l1_target": {
            "l1_variant": "shift-range",
            "psi": psi,
            "omega": omega,
            "omega_prime": omega_prime,
            "grid": grid,
            "z_points": np.atleast_1d(np.asarray(z_points, dtype=np.complex128)),
        }
    }
