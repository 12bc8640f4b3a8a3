from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Literal

import numpy as np
import numpy.typing as npt

from sqfun_lab.errors import ContourMarginError, DimensionMismatchError, ParameterRangeError
from sqfun_lab.linalg.models import CMatrix, as_cmatrix

ClassTag = Literal["elementary", "bounded", "unchecked"]
Evaluator = Callable[[npt.NDArray[np.complex128]], npt.NDArray[np.complex128]]

# Absolute minimum of omega' - omega0. Fixed rather than a fraction of omega' - omega0,
# which would depend on the height it is meant to validate.
DEFAULT_RESOLVENT_MARGIN = 0.05


@dataclass(frozen=True, eq=False)
class StripOperator:
    """A square matrix of strip type omega0 = max |Im lambda_i(A)|.

    Every contour half-height omega' used with it must exceed
    omega0 + resolvent_margin, an absolute distance.
    """

    A: CMatrix
    omega0: float
    eigenvalues: npt.NDArray[np.complex128]
    resolvent_margin: float = DEFAULT_RESOLVENT_MARGIN

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @property
    def real_spread(self) -> float:
        return float(np.max(np.abs(self.eigenvalues.real)))


def strip_operator(A: npt.ArrayLike, resolvent_margin: float = DEFAULT_RESOLVENT_MARGIN) -> StripOperator:
    A = as_cmatrix(A)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"Expected a square matrix, got shape {A.shape}")
    if resolvent_margin <= 0:
        raise ParameterRangeError(f"resolvent_margin must be positive, got {resolvent_margin}")
    eigenvalues = np.linalg.eigvals(A)
    return StripOperator(A, float(np.max(np.abs(eigenvalues.imag))), eigenvalues, resolvent_margin)


@dataclass(frozen=True, eq=False)
class HolFn:
    """A vectorized holomorphic function on {|Im z| < strip_half_height}.

    With ``sector=True`` the same number is the half-angle of the sector
    {|arg z| < strip_half_height} instead.
    """

    evaluator: Evaluator
    strip_half_height: float
    class_tag: ClassTag = "unchecked"
    name: str = "f"
    sector: bool = False

    def __call__(self, z: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        z = np.asarray(z, dtype=np.complex128)
        return np.broadcast_to(self.evaluator(z), z.shape).astype(np.complex128)

    def __mul__(self, other: HolFn) -> HolFn:
        if self.sector != other.sector:
            raise ValueError("Cannot multiply a strip function with a sector function")
        return HolFn(
            lambda z: self.evaluator(z) * other.evaluator(z),
            min(self.strip_half_height, other.strip_half_height),
            _product_tag(self.class_tag, other.class_tag),
            f"{self.name}*{other.name}",
            self.sector,
        )

    def with_tag(self, class_tag: ClassTag) -> HolFn:
        return replace(self, class_tag=class_tag)

    def compose_exp(self) -> HolFn:
        """f(e^z) on the strip of the sector's half-angle."""
        if not self.sector:
            raise ValueError(f"{self.name} is not a sector function")
        return HolFn(
            lambda z: self.evaluator(np.exp(z)),
            self.strip_half_height,
            "bounded" if self.class_tag != "unchecked" else "unchecked",
            f"{self.name}(exp)",
        )


def _product_tag(first: ClassTag, second: ClassTag) -> ClassTag:
    tags = {first, second}
    if "unchecked" in tags:
        return "unchecked"
    if "elementary" in tags:
        return "elementary"
    return "bounded"


def admissible_height(
    operator: StripOperator, f: HolFn, requested: float | None = None
) -> float:
    """Contour half-height omega' in (omega0 + margin, strip_half_height).

    Default: omega0 + min(strip_half_height - omega0, 1) / 2.
    """
    height = requested
    if height is None:
        gap = f.strip_half_height - operator.omega0
        height = operator.omega0 + min(gap, 1.0) / 2 if gap > 0 else operator.omega0

    if height - operator.omega0 <= operator.resolvent_margin:
        raise ContourMarginError(
            f"Contour height {height:.4g} is within {operator.resolvent_margin} of the spectrum"
            f" (omega0 = {operator.omega0:.4g})"
        )
    if height >= f.strip_half_height:
        raise ContourMarginError(
            f"Contour height {height:.4g} leaves the strip of {f.name}"
            f" (half-height {f.strip_half_height:.4g})"
        )
    return height


def pole_distance(operator: StripOperator, f: HolFn, height: float) -> float:
    """Distance from the contour to the nearest singularity it must avoid."""
    return min(height - operator.omega0, f.strip_half_height - height)
