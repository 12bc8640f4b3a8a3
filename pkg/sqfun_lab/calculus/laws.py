from typing import Literal
from typing_extensions import Unpack

import numpy as np
import numpy.typing as npt

from sqfun_lab.calculus.apply import calculus_apply, regularized_terms
from sqfun_lab.calculus.context import CalculusContext, with_regularized
from sqfun_lab.calculus.functions import constant, resolvent_function
from sqfun_lab.calculus.models import HolFn, StripOperator, admissible_height, strip_operator
from sqfun_lab.errors import ParameterRangeError
from sqfun_lab.reports import CheckReport, complex_pair, digest

LawKind = Literal["multiplicative", "resolvent-consistency", "regularizer-convergence"]

DEFAULT_REGULARIZER_SEQUENCE = (1, 4, 16, 64, 256, 1024, 4096, 10000)


def calculus_law_check(
    operator: StripOperator | npt.ArrayLike,
    f: HolFn,
    g: HolFn | None = None,
    kind: LawKind = "multiplicative",
    lam: complex | None = None,
    ns: tuple[float, ...] = DEFAULT_REGULARIZER_SEQUENCE,
    tol: float = 1e-8,
    **context: Unpack[CalculusContext],
) -> CheckReport:
    if not isinstance(operator, StripOperator):
        operator = strip_operator(operator)
    if not context:
        context = with_regularized()

    match kind:
        case "multiplicative":
            g = g or constant(1.0)
            lhs = calculus_apply(f * g, operator, **context)
            rhs = calculus_apply(f, operator, **context) @ calculus_apply(g, operator, **context)
            residual = float(np.linalg.norm(lhs - rhs, 2))
            return _report(kind, operator, residual, tol, {"f": f.name, "g": g.name})
        case "resolvent-consistency":
            if lam is None:
                raise ParameterRangeError("resolvent-consistency needs lambda")
            r_lam = resolvent_function(lam)
            admissible_height(operator, r_lam)
            lhs = calculus_apply(f * r_lam, operator, **context)
            resolvent = np.linalg.inv(lam * np.eye(operator.dim) - operator.A)
            rhs = calculus_apply(f, operator, **context) @ resolvent
            residual = float(np.linalg.norm(lhs - rhs, 2))
            return _report(kind, operator, residual, tol, {"f": f.name, "lambda": complex_pair(lam)})
        case "regularizer-convergence":
            return _regularizer_convergence(operator, f, ns, context)
        case unknown:
            raise ValueError(f"Unknown law: {unknown}")


def _regularizer_convergence(
    operator: StripOperator, f: HolFn, ns: tuple[float, ...], context: CalculusContext
) -> CheckReport:
    """||(e_n f)(A) - f(A)|| along increasing n; passes when it never increases."""
    reference = calculus_apply(f, operator, **context)
    height = admissible_height(operator, f, context["calculus_method"].get("contour_height"))

    distances = []
    for n in ns:
        _, e_n_f = regularized_terms(
            f, operator, height, n, context["calculus_method"].get("nodes", 1601), context["num_workers"]
        )
        distances.append(float(np.linalg.norm(e_n_f - reference, 2)))

    monotone = all(
        later <= earlier * (1 + 1e-6) + 1e-13 for earlier, later in zip(distances, distances[1:])
    )
    return CheckReport(
        op="calculus_law_check",
        inputs_digest=digest(operator.A),
        value=distances[-1],
        passed=monotone,
        details={"kind": "regularizer-convergence", "n": list(ns), "distances": distances},
    )


def _report(
    kind: LawKind, operator: StripOperator, residual: float, tol: float, details: dict
) -> CheckReport:
    return CheckReport(
        op="calculus_law_check",
        inputs_digest=digest(operator.A),
        value=residual,
        expected=0.0,
        tol=tol,
        passed=residual < tol,
        details={"kind": kind, **details},
    )
