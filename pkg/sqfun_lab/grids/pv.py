import math

import numpy as np
import numpy.typing as npt

from sqfun_lab.errors import GridMismatchError
from sqfun_lab.grids.models import Contour


def interior_indices(contour: Contour) -> npt.NDArray[np.intp]:
    """Global indices of nodes strictly inside straight segments."""
    indices = [
        np.arange(piece.start + 1, piece.stop - 1)
        for piece, segment in zip(contour.segment_slices(), contour.segments)
        if segment.param is not None
    ]
    return np.concatenate(indices) if indices else np.empty(0, dtype=np.intp)


def locate_nodes(contour: Contour, points: npt.ArrayLike, atol: float = 1e-12) -> npt.NDArray[np.intp]:
    nodes = contour.nodes
    rows = []
    for point in np.atleast_1d(np.asarray(points, dtype=np.complex128)):
        hits = np.flatnonzero(np.abs(nodes - point) <= atol)
        if hits.size == 0:
            raise GridMismatchError(f"Evaluation point {point} is not a grid node")
        rows.append(int(hits[0]))
    return np.asarray(rows, dtype=np.intp)


def pv_matrix(contour: Contour, rows: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """Matrix P with (P @ F)[r] ~ p.v. int F(w) / (lambda_r - w) dw, lambda_r = nodes[rows[r]].

    The node at lambda is skipped. It is replaced by the limit -F'(lambda) dw
    of the regular part (F(w) - F(lambda)) / (lambda - w), from central
    differences. The same-segment constant part is integrated exactly:
    p.v. int_a^b dtau / (tau_j - tau) = log((tau_j - a) / (b - tau_j)).
    On a uniform segment the skipped node has symmetric neighbours and the
    odd part of the kernel cancels pairwise.
    """
    nodes, weights = contour.nodes, contour.weights
    rows = np.asarray(rows, dtype=np.intp)
    owner = np.concatenate(
        [np.full(piece.stop - piece.start, k) for k, piece in enumerate(contour.segment_slices())]
    )
    slices = contour.segment_slices()

    lam = nodes[rows]
    diff = lam[:, None] - nodes[None, :]
    diff[np.arange(rows.size), rows] = 1.0
    P = weights[None, :] / diff
    P[np.arange(rows.size), rows] = 0.0

    for r, j in enumerate(rows):
        k = owner[j]
        segment, piece = contour.segments[k], slices[k]
        if segment.param is None or segment.bounds is None:
            raise GridMismatchError(f"Principal values need a straight segment, got {segment.kind}")
        local = j - piece.start
        if local == 0 or j == piece.stop - 1:
            raise GridMismatchError("Principal value requested at a segment end")

        tau, (a, b) = segment.param[local], segment.bounds
        P[r, j] += math.log((tau - a) / (b - tau)) - P[r, piece].sum()

        c = weights[j] / (nodes[j + 1] - nodes[j - 1])
        P[r, j + 1] -= c
        P[r, j - 1] += c

    return P


def pv_convolution(
    contour: Contour, values: npt.ArrayLike, points: npt.ArrayLike | None = None
) -> npt.NDArray[np.complex128]:
    """p.v. int h(w) / (lambda - w) dw at grid nodes lambda (default: all interior nodes)."""
    rows = interior_indices(contour) if points is None else locate_nodes(contour, points)
    return pv_matrix(contour, rows) @ np.asarray(values, dtype=np.complex128)
