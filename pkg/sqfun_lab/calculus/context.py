from typing import Literal
from typing_extensions import NotRequired, TypedDict


class ElementaryMethod(TypedDict):
    calculus_variant: Literal["elementary"]
    contour_height: NotRequired[float]
    nodes: int
    half_width: float


class RegularizedMethod(TypedDict):
    calculus_variant: Literal["regularized"]
    contour_height: NotRequired[float]
    n: float
    nodes: int
    check_doubling: bool


class GaussCauchyMethod(TypedDict):
    calculus_variant: Literal["gauss-cauchy"]
    contour_height: NotRequired[float]
    step: float
    tail: float


CalculusMethod = ElementaryMethod | RegularizedMethod | GaussCauchyMethod


class CalculusContext(TypedDict):
    calculus_method: CalculusMethod
    num_workers: int


def with_elementary(
    contour_height: float | None = None,
    nodes: int = 1601,
    half_width: float = 1e6,
    num_workers: int = 1,
) -> CalculusContext:
    method: ElementaryMethod = {
        "calculus_variant": "elementary",
        "nodes": nodes,
        "half_width": half_width,
    }
    if contour_height is not None:
        method["contour_height"] = contour_height
    return {"calculus_method": method, "num_workers": num_workers}


def with_regularized(
    n: float = 64,
    contour_height: float | None = None,
    nodes: int = 1601,
    check_doubling: bool = True,
    num_workers: int = 1,
) -> CalculusContext:
    method: RegularizedMethod = {
        "calculus_variant": "regularized",
        "n": n,
        "nodes": nodes,
        "check_doubling": check_doubling,
    }
    if contour_height is not None:
        method["contour_height"] = contour_height
    return {"calculus_method": method, "num_workers": num_workers}


def with_gauss_cauchy(
    contour_height: float | None = None,
    step: float = 0.05,
    tail: float = 10.0,
    num_workers: int = 1,
) -> CalculusContext:
    method: GaussCauchyMethod = {"calculus_variant": "gauss-cauchy", "step": step, "tail": tail}
    if contour_height is not None:
        method["contour_height"] = contour_height
    return {"calculus_method": method, "num_workers": num_workers}
