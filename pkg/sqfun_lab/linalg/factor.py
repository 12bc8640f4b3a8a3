from typing import Literal, overload

import numpy as np
import numpy.typing as npt
import scipy.linalg

from sqfun_lab.errors import DimensionMismatchError
from sqfun_lab.linalg.models import (
    IsometryDecomposition,
    PolarFactors,
    SvdFactors,
    as_cmatrix,
)

_NEGLIGIBLE_WEIGHT = 1e-15


@overload
def matrix_factor(A: npt.ArrayLike, kind: Literal["svd"]) -> SvdFactors: ...


@overload
def matrix_factor(A: npt.ArrayLike, kind: Literal["polar"]) -> PolarFactors: ...


def matrix_factor(A: npt.ArrayLike, kind: Literal["svd", "polar"]) -> SvdFactors | PolarFactors:
    A = as_cmatrix(A)
    match kind:
        case "svd":
            # LAPACK returns tau sorted descending; equal values keep column order.
            U, tau, vh = np.linalg.svd(A, full_matrices=True)
            return SvdFactors(U, tau, vh.conj().T)
        case "polar":
            W, P = scipy.linalg.polar(A, side="right")
            return PolarFactors(W, (P + P.conj().T) / 2)
        case unknown:
            raise ValueError(f"Unknown factorization: {unknown}")


def contraction_to_isometries(A: npt.ArrayLike) -> IsometryDecomposition:
    """Write A = scale * sum_i weight_i * U_i with unitary U_i and weights summing to 1.

    A = W P (polar), P = Q diag(lambda) Q^* with lambda descending. With
    mu = lambda / lambda_1 the positive part telescopes as
    sum_j (mu_j - mu_{j+1}) P_j, P_j the spectral projection onto the first j
    eigenvectors. Every P_j != I splits as (I + (2 P_j - I)) / 2, and the
    identity halves are collected into one W term.
    """
    A = as_cmatrix(A)
    d = A.shape[0]
    if A.shape[1] != d:
        raise DimensionMismatchError(f"Expected a square matrix, got shape {A.shape}")

    polar = matrix_factor(A, "polar")
    eigenvalues, Q = np.linalg.eigh(polar.P)
    order = np.argsort(eigenvalues, kind="stable")[::-1]
    eigenvalues, Q = np.clip(eigenvalues[order], 0.0, None), Q[:, order]

    scale = float(eigenvalues[0])
    if scale == 0.0:
        return IsometryDecomposition(0.0, ((1.0, np.eye(d, dtype=np.complex128)),))

    mu = np.minimum.accumulate(eigenvalues / scale)
    mu[0] = 1.0
    steps = mu - np.append(mu[1:], 0.0)

    identity_weight = steps[-1]
    terms: list[tuple[float, npt.NDArray[np.complex128]]] = []
    for j in range(d - 1):
        if steps[j] <= _NEGLIGIBLE_WEIGHT:
            continue
        identity_weight += steps[j] / 2
        signs = np.where(np.arange(d) <= j, 1.0, -1.0)
        reflection = (Q * signs) @ Q.conj().T
        terms.append((float(steps[j] / 2), polar.W @ reflection))

    return IsometryDecomposition(scale, ((float(identity_weight), polar.W), *terms))
