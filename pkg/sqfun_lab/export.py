from __future__ import annotations

import csv
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

import numpy as np
import numpy.typing as npt

if TYPE_CHECKING:
    from sqfun_lab.calculus.models import HolFn
    from sqfun_lab.frames.gabor import GaborFrame
    from sqfun_lab.frames.models import FrameSpec
    from sqfun_lab.grids.models import DiscreteHilbert
    from sqfun_lab.sqfun.models import SqfOutput


def _write_rows(path: Path, header: list[str], rows: Iterable[Iterable[object]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def _node_columns(nodes: npt.NDArray[np.generic]) -> tuple[list[str], npt.NDArray[np.float64]]:
    nodes = np.asarray(nodes)
    if nodes.ndim == 2:
        return [f"node_{i}" for i in range(nodes.shape[1])], nodes.real.astype(np.float64)
    if np.iscomplexobj(nodes):
        return ["node_re", "node_im"], np.stack([nodes.real, nodes.imag], axis=1)
    return ["node"], nodes.astype(np.float64)[:, None]


def write_grid_csv(path: Path, grid: DiscreteHilbert) -> Path:
    header, columns = _node_columns(grid.nodes)
    return _write_rows(
        path, header + ["weight"], (list(row) + [w] for row, w in zip(columns, grid.weights))
    )


def write_sqfun_csv(path: Path, output: SqfOutput) -> Path:
    """One row per grid node: the node, then Re/Im of each component of f(t, A) x."""
    header, columns = _node_columns(output.grid.nodes)
    values = output.node_values()
    for i in range(values.shape[1]):
        header += [f"re_{i}", f"im_{i}"]
    interleaved = np.empty((values.shape[0], 2 * values.shape[1]))
    interleaved[:, 0::2], interleaved[:, 1::2] = values.real, values.imag
    return _write_rows(path, header, (list(a) + list(b) for a, b in zip(columns, interleaved)))


def write_multiplier_csv(path: Path, t: npt.ArrayLike, multiplier: npt.ArrayLike) -> Path:
    m = np.asarray(multiplier, dtype=np.complex128)
    return _write_rows(path, ["t", "re_m", "im_m"], zip(np.asarray(t), m.real, m.imag))


def write_frame_csv(path: Path, frame: FrameSpec) -> Path:
    """Frame vectors in long form: label, row index, Re, Im."""
    rows = (
        (label, i, float(value.real), float(value.imag))
        for label, column in zip(frame.labels, frame.vectors.T)
        for i, value in enumerate(column)
    )
    return _write_rows(path, ["label", "index", "re", "im"], rows)


def write_coefficient_csv(path: Path, frame: GaborFrame, g: HolFn, num_workers: int = 1) -> Path:
    coefficients = frame.coefficients(g, "ibp", num_workers)
    rows = (
        (int(n), int(k), float(abs(coefficients[row, col])))
        for row, k in enumerate(frame.translates)
        for col, n in enumerate(frame.modulations)
    )
    return _write_rows(path, ["n", "k", "abs_coeff"], rows)
