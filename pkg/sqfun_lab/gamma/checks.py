from typing_extensions import Unpack

import numpy as np
import numpy.typing as npt

from sqfun_lab.errors import BoundViolationError, DimensionMismatchError, GridMismatchError
from sqfun_lab.gamma.context import GammaNormContext, with_hilbert_exact
from sqfun_lab.gamma.models import FiniteRankOp, from_representation
from sqfun_lab.gamma.norm import GammaEstimate, gamma_norm
from sqfun_lab.linalg.models import NormSpec, as_cmatrix, as_cvector
from sqfun_lab.linalg.norms import hilbert_space, op_norm, vector_norm
from sqfun_lab.reports import CheckReport, digest

_BAND = 3.0
_RELATIVE_SLACK = 1e-12


def _is_exact(context: GammaNormContext) -> bool:
    return context["gamma_method"]["gamma_variant"] != "monte-carlo"


def check_contraction_principle(
    A: npt.ArrayLike,
    xs: list[npt.ArrayLike],
    norm: NormSpec,
    **context: Unpack[GammaNormContext],
) -> CheckReport:
    """E||sum_k gamma_k sum_j a_kj x_j||^2 <= ||A||^2 E||sum_j gamma_j x_j||^2."""
    A = as_cmatrix(A)
    if A.shape[1] != len(xs):
        raise DimensionMismatchError(f"A has {A.shape[1]} columns but {len(xs)} vectors were given")
    X = np.stack([as_cvector(x) for x in xs], axis=1)

    opnorm = op_norm(A, hilbert_space(), hilbert_space()).value
    mixed = gamma_norm(FiniteRankOp(X @ A.T, norm), **context)
    plain = gamma_norm(FiniteRankOp(X, norm), **context)

    lhs, rhs = mixed.value**2, opnorm**2 * plain.value**2
    stderr = float(np.hypot(mixed.squared_stderr, opnorm**2 * plain.squared_stderr))
    slack = _RELATIVE_SLACK * max(rhs, 1.0) + _BAND * stderr

    return CheckReport(
        op="check_contraction_principle",
        inputs_digest=digest(A, X),
        value=lhs,
        bound=rhs,
        stderr=stderr if not _is_exact(context) else None,
        passed=lhs <= rhs + slack,
        details={"lhs": lhs, "rhs": rhs, "opnormA": opnorm, "method": mixed.method},
    )


def check_ideal_property(
    L: npt.ArrayLike,
    T: FiniteRankOp,
    R: npt.ArrayLike,
    target_norm: NormSpec | None = None,
    **context: Unpack[GammaNormContext],
) -> CheckReport:
    """gamma(L T R) <= ||L|| gamma(T) ||R||, with L: X -> Y and R acting on H."""
    target_norm = target_norm or T.codomain_norm
    L, R = as_cmatrix(L), as_cmatrix(R)
    composed = T.compose(L, R, target_norm)

    l_norm = op_norm(L, T.codomain_norm, target_norm)
    r_norm = op_norm(R, hilbert_space(), hilbert_space()).value
    lhs, rhs = gamma_norm(composed, **context), gamma_norm(T, **context)

    bound = l_norm.value * rhs.value * r_norm
    stderr = float(np.hypot(lhs.stderr or 0.0, l_norm.value * r_norm * (rhs.stderr or 0.0)))
    slack = _RELATIVE_SLACK * max(bound, 1.0) + _BAND * stderr

    return CheckReport(
        op="check_ideal_property",
        inputs_digest=digest(L, T.matrix, R),
        value=lhs.value,
        bound=bound,
        stderr=stderr if not _is_exact(context) else None,
        passed=lhs.value <= bound + slack,
        details={
            "normL": l_norm.value,
            "normL_certified": l_norm.certified,
            "normR": r_norm,
            "gammaT": rhs.value,
        },
    )


def trace_pairing(U: FiniteRankOp, V: FiniteRankOp) -> complex:
    """tr(V'U) = sum_alpha <U e_alpha, V conj(e_alpha)> over the shared basis of H."""
    if U.m != V.m or (U.domain is not None and V.domain is not None and U.domain is not V.domain):
        raise GridMismatchError("Trace pairing needs U and V over the same grid")
    if U.n != V.n:
        raise DimensionMismatchError(f"Codomains differ: {U.n} vs {V.n}")
    return complex(np.vdot(V.matrix, U.matrix))


def dual_gamma_lower_bound(
    V: FiniteRankOp,
    norm: NormSpec,
    trials: int = 64,
    seed: int = 0,
    **context: Unpack[GammaNormContext],
) -> GammaEstimate:
    """gamma'-norm of V: H' -> X'.

    Exact (Hilbert-Schmidt) when X is Hilbert. Otherwise the supremum of
    |tr(V'U)| / gamma(U) over random U into (C^n, norm), a lower bound up to the accuracy of the
    gamma-norm method in ``context``.
    """
    if norm.is_hilbert:
        return gamma_norm(V, **with_hilbert_exact())

    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(trials):
        U = FiniteRankOp(
            rng.standard_normal(V.matrix.shape) + 1j * rng.standard_normal(V.matrix.shape),
            norm,
            V.domain,
        )
        best = max(best, abs(trace_pairing(U, V)) / gamma_norm(U, **context).value)
    return GammaEstimate(best, None, "sampled-lower-bound", trials)


def nuclear_bound(
    representation: list[tuple[npt.ArrayLike, npt.ArrayLike]],
    norm: NormSpec,
    **context: Unpack[GammaNormContext],
) -> float:
    """sum_j ||g_j|| ||x_j||, checked to dominate gamma(sum_j conj(g_j) (x) x_j)."""
    bound = float(
        sum(
            np.linalg.norm(as_cvector(g)) * float(vector_norm(as_cvector(x), norm))
            for g, x in representation
        )
    )
    estimate = gamma_norm(from_representation(representation, norm), **context)
    slack = _RELATIVE_SLACK * max(bound, 1.0) + _BAND * (estimate.stderr or 0.0)
    if estimate.value > bound + slack:
        raise BoundViolationError(f"gamma norm {estimate.value} exceeds {bound}")
    return bound
