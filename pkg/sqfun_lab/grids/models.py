from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt

from sqfun_lab.errors import GridMismatchError

MeasureTag = Literal[
    "lebesgue-line", "mult-haar", "boundary-strip", "boundary-keyhole", "product"
]
SegmentKind = Literal["line", "ray", "arc", "cap"]


@dataclass(frozen=True, eq=False)
class DiscreteHilbert:
    """Weighted quadrature grid standing in for L^2(Omega, mu).

    Grid functions are plain arrays of node values; operator matrices use
    sqrt(weight)-scaled coordinates so that grid l^2 is isometric to L^2.
    """

    nodes: npt.NDArray[np.generic]
    weights: npt.NDArray[np.float64]
    measure_tag: MeasureTag
    omega: float | None = None
    radius: float | None = None
    factors: tuple[DiscreteHilbert, ...] = field(default=())

    def __post_init__(self):
        if len(self.nodes) != self.weights.size:
            raise GridMismatchError(
                f"{len(self.nodes)} nodes but {self.weights.size} weights"
            )
        if not np.all(self.weights > 0):
            raise ValueError("Grid weights must be strictly positive")

    @property
    def size(self) -> int:
        return self.weights.size

    @property
    def sqrt_weights(self) -> npt.NDArray[np.float64]:
        return np.sqrt(self.weights)

    def to_coordinates(self, values: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        """Node values (last axis) -> sqrt(weight)-scaled coordinates."""
        return np.asarray(values, dtype=np.complex128) * self.sqrt_weights

    def inner(self, f: npt.ArrayLike, g: npt.ArrayLike) -> complex:
        return complex(np.sum(self.weights * np.asarray(f) * np.conj(np.asarray(g))))

    def norm(self, f: npt.ArrayLike) -> float:
        return float(np.sqrt(np.sum(self.weights * np.abs(np.asarray(f)) ** 2)))

    def tensor(self, other: DiscreteHilbert) -> DiscreteHilbert:
        """Product grid, first factor varying slowest."""
        first, second = np.meshgrid(np.arange(self.size), np.arange(other.size), indexing="ij")
        return DiscreteHilbert(
            nodes=np.stack([self.nodes[first.ravel()], other.nodes[second.ravel()]], axis=1),
            weights=np.kron(self.weights, other.weights),
            measure_tag="product",
            factors=(self, other),
        )

    def require(self, *tags: MeasureTag) -> None:
        if self.measure_tag not in tags:
            raise GridMismatchError(
                f"Expected a grid tagged {' or '.join(tags)}, got {self.measure_tag}"
            )


@dataclass(frozen=True, eq=False)
class ContourSegment:
    """One smooth piece; ``weights`` are oriented dz values.

    Straight pieces also carry ``origin``/``direction``/``param`` with
    nodes = origin + param * direction and the parameter range ``bounds``.
    """

    name: str
    kind: SegmentKind
    nodes: npt.NDArray[np.complex128]
    weights: npt.NDArray[np.complex128]
    origin: complex | None = None
    direction: complex | None = None
    param: npt.NDArray[np.float64] | None = None
    bounds: tuple[float, float] | None = None


@dataclass(frozen=True, eq=False)
class Contour:
    segments: tuple[ContourSegment, ...]
    measure_tag: MeasureTag
    omega: float
    radius: float | None = None
    closed: bool = False

    @property
    def nodes(self) -> npt.NDArray[np.complex128]:
        return np.concatenate([segment.nodes for segment in self.segments])

    @property
    def weights(self) -> npt.NDArray[np.complex128]:
        return np.concatenate([segment.weights for segment in self.segments])

    @property
    def size(self) -> int:
        return sum(segment.nodes.size for segment in self.segments)

    def integrate(self, values: npt.ArrayLike) -> complex:
        return complex(np.sum(np.asarray(values) * self.weights))

    def as_hilbert(self) -> DiscreteHilbert:
        return DiscreteHilbert(
            nodes=self.nodes,
            weights=np.abs(self.weights),
            measure_tag=self.measure_tag,
            omega=self.omega,
            radius=self.radius,
        )

    def segment_slices(self) -> list[slice]:
        offsets = np.cumsum([0] + [segment.nodes.size for segment in self.segments])
        return [slice(int(start), int(stop)) for start, stop in zip(offsets[:-1], offsets[1:])]
