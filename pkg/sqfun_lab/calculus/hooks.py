from typing_extensions import Unpack

import numpy.typing as npt

from sqfun_lab.calculus.apply import calculus_apply
from sqfun_lab.calculus.context import CalculusContext
from sqfun_lab.calculus.contours import elementary_contour, gauss_cauchy_contour
from sqfun_lab.calculus.models import DEFAULT_RESOLVENT_MARGIN, HolFn, strip_operator
from sqfun_lab.calculus.sweep import use_contour_sweep
from sqfun_lab.errors import MethodMismatchError
from sqfun_lab.fp.lazy_val import lazy_val


def use_strip_operator(A: npt.ArrayLike, resolvent_margin: float = DEFAULT_RESOLVENT_MARGIN):
    """Bind a matrix once; functions and sweeps share its spectral data."""

    @lazy_val
    def operator():
        return strip_operator(A, resolvent_margin)

    def apply(f: HolFn, **context: Unpack[CalculusContext]):
        return calculus_apply(f, operator(), **context)

    def sweep(f: HolFn, **context: Unpack[CalculusContext]):
        """Contour for f under ``context`` and the shared sweep over it."""
        method = context["calculus_method"]
        match method["calculus_variant"]:
            case "elementary":
                contour = elementary_contour(operator(), f, method)
                variant = "resolvent"
            case "gauss-cauchy":
                contour = gauss_cauchy_contour(operator(), f, method)
                variant = "gauss-cauchy"
            case "regularized":
                raise MethodMismatchError("Sweeps need the elementary or gauss-cauchy method")
            case unknown:
                raise ValueError(f"Unknown calculus method: {unknown}")
        return (contour, *use_contour_sweep(operator(), contour, variant, context["num_workers"]))

    return (
        operator,
        apply,
        sweep,
    )
