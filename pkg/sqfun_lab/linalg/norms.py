import math

import numpy as np
import numpy.typing as npt

from sqfun_lab.errors import ParameterRangeError
from sqfun_lab.linalg.models import CMatrix, NormSpec, OpNormEstimate, as_cmatrix


def hilbert_space() -> NormSpec:
    return NormSpec(kind="hilbert")


def lp_space(p: float, cotype_q: float | None = None) -> NormSpec:
    return NormSpec(kind="lp", p=p, cotype_q=cotype_q)


def weighted_lp_space(p: float, weights: npt.ArrayLike) -> NormSpec:
    return NormSpec(kind="weighted-lp", p=p, weights=tuple(float(w) for w in np.ravel(weights)))


def conjugate_exponent(p: float) -> float:
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def dual_norm_spec(spec: NormSpec) -> NormSpec:
    """Norm of X' on C^n under the pairing <x, x'> = sum x_i conj(x'_i)."""
    match spec.kind:
        case "hilbert":
            return spec
        case "lp":
            return NormSpec(kind="lp", p=conjugate_exponent(spec.p))
        case "weighted-lp":
            if spec.p == 1.0 or math.isinf(spec.p):
                raise ParameterRangeError("Dual of a weighted l^p needs 1 < p < inf")
            q = conjugate_exponent(spec.p)
            weights = np.asarray(spec.weights) ** (1.0 - q)
            return weighted_lp_space(q, weights)


def _scaling(spec: NormSpec) -> npt.NDArray[np.float64] | None:
    if spec.weights is None or math.isinf(spec.p):
        return None
    return np.asarray(spec.weights) ** (1.0 / spec.p)


def vector_norm(x: npt.ArrayLike, spec: NormSpec, axis: int = -1) -> npt.NDArray[np.float64]:
    a = np.moveaxis(np.abs(np.asarray(x)), axis, -1)
    spec.check_dim(a.shape[-1])
    scale = _scaling(spec)
    if scale is not None:
        a = a * scale
    return np.linalg.norm(a, ord=spec.p, axis=-1)


def _plain_matrix(A: CMatrix, source: NormSpec, target: NormSpec) -> CMatrix:
    source.check_dim(A.shape[1])
    target.check_dim(A.shape[0])
    B = A
    if (s := _scaling(target)) is not None:
        B = s[:, None] * B
    if (s := _scaling(source)) is not None:
        B = B / s[None, :]
    return B


def _duality_map(y: npt.NDArray[np.complex128], q: float) -> npt.NDArray[np.complex128]:
    """Unit vector d in l^{q'} with <y, d> = ||y||_q."""
    size = np.abs(y)
    norm = np.linalg.norm(y, ord=q)
    if norm == 0.0:
        return np.zeros_like(y)
    phase = np.divide(y, size, out=np.zeros_like(y), where=size > 0)
    return (size / norm) ** (q - 1.0) * phase


def _boyd(B: CMatrix, p: float, q: float, max_iter: int, starts: int) -> OpNormEstimate:
    p_dual = conjugate_exponent(p)
    rng = np.random.default_rng(0)
    _, _, vh = np.linalg.svd(B)
    candidates = [vh[0].conj()] + [
        rng.standard_normal(B.shape[1]) + 1j * rng.standard_normal(B.shape[1])
        for _ in range(starts)
    ]

    best, total_iterations = 0.0, 0
    for x in candidates:
        x = x / np.linalg.norm(x, ord=p)
        value = float(np.linalg.norm(B @ x, ord=q))
        for _ in range(max_iter):
            total_iterations += 1
            z = B.conj().T @ _duality_map(B @ x, q)
            if not np.any(z):
                break
            x = _duality_map(z, p_dual)
            updated = float(np.linalg.norm(B @ x, ord=q))
            if updated - value <= 1e-14 * max(updated, 1.0):
                value = max(value, updated)
                break
            value = updated
        best = max(best, value)

    return OpNormEstimate(best, certified=False, method="power-iteration", iterations=total_iterations)


def op_norm(
    A: npt.ArrayLike,
    source: NormSpec,
    target: NormSpec,
    max_iter: int = 500,
    starts: int = 8,
) -> OpNormEstimate:
    """Operator norm of A: (C^m, source) -> (C^n, target).

    (2, 2) is the largest singular value. 1 -> q and p -> inf are exact
    column/row formulas. Every other pair is a lower bound from projected
    power iteration and comes back with ``certified=False``.
    """
    B = _plain_matrix(as_cmatrix(A), source, target)

    p, q = source.p, target.p
    if p == 2.0 and q == 2.0:
        return OpNormEstimate(float(np.linalg.svd(B, compute_uv=False)[0]), True, "svd")
    if p == 1.0:
        return OpNormEstimate(float(np.max(np.linalg.norm(B, ord=q, axis=0))), True, "columns")
    if math.isinf(q):
        rows = np.linalg.norm(B, ord=conjugate_exponent(p), axis=1)
        return OpNormEstimate(float(np.max(rows)), True, "rows")
    return _boyd(B, p, q, max_iter, starts)
