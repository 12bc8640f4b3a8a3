from typing import Literal
from typing_extensions import NotRequired, TypedDict


class GaussCauchyFormula(TypedDict):
    repr_variant: Literal["gauss-cauchy"]
    omega: float
    step: float
    tail: float


class PoissonFormula(TypedDict):
    repr_variant: Literal["poisson"]
    omega: float
    factor_alpha: NotRequired[float]


class LaplaceFormula(TypedDict):
    repr_variant: Literal["laplace"]
    alpha: float
    beta: float
    omega: float
    t_lower: float
    t_upper: float
    t_count: int
    contour_count: int


ReprContext = GaussCauchyFormula | PoissonFormula | LaplaceFormula


class ReconstructContext(TypedDict):
    repr_method: ReprContext
    num_workers: int


def with_gauss_cauchy_formula(
    omega: float, step: float = 0.025, tail: float = 10.0, num_workers: int = 1
) -> ReconstructContext:
    return {
        "repr_method": {"repr_variant": "gauss-cauchy", "omega": omega, "step": step, "tail": tail},
        "num_workers": num_workers,
    }


def with_poisson_formula(
    omega: float, factor_alpha: float | None = None, num_workers: int = 1
) -> ReconstructContext:
    """Direct Poisson formula; with ``factor_alpha`` > omega also the factored form."""
    method: PoissonFormula = {"repr_variant": "poisson", "omega": omega}
    if factor_alpha is not None:
        method["factor_alpha"] = factor_alpha
    return {"repr_method": method, "num_workers": num_workers}


def with_laplace_formula(
    alpha: float,
    beta: float,
    omega: float,
    t_lower: float = 1e-6,
    t_upper: float = 60.0,
    t_count: int = 801,
    contour_count: int = 1601,
    num_workers: int = 1,
) -> ReconstructContext:
    return {
        "repr_method": {
            "repr_variant": "laplace",
            "alpha": alpha,
            "beta": beta,
            "omega": omega,
            "t_lower": t_lower,
            "t_upper": t_upper,
            "t_count": t_count,
            "contour_count": contour_count,
        },
        "num_workers": num_workers,
    }
