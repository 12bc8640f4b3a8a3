import math

from sqfun_lab.calculus.context import ElementaryMethod, GaussCauchyMethod
from sqfun_lab.calculus.models import HolFn, StripOperator, admissible_height, pole_distance
from sqfun_lab.grids.make import strip_contour
from sqfun_lab.grids.models import Contour

# e^{-t^2/n} < e^{-49} past this many multiples of sqrt(n).
_REGULARIZER_TAIL = 7.0
# Uniform trapezoid error ~ exp(-2 pi d / h); d / h >= 6 keeps it below 1e-16.
_STEPS_PER_POLE_DISTANCE = 6.0


def elementary_contour(operator: StripOperator, f: HolFn, method: ElementaryMethod) -> Contour:
    height = admissible_height(operator, f, method.get("contour_height"))
    return strip_contour(height, method["half_width"], method["nodes"], spacing="sinh")


def regularized_contour(
    operator: StripOperator, height: float, n: float, nodes: int
) -> Contour:
    half_width = operator.real_spread + _REGULARIZER_TAIL * math.sqrt(n)
    return strip_contour(height, half_width, nodes, spacing="sinh")


def gauss_cauchy_contour(operator: StripOperator, f: HolFn, method: GaussCauchyMethod) -> Contour:
    height = admissible_height(operator, f, method.get("contour_height"))
    step = min(method["step"], pole_distance(operator, f, height) / _STEPS_PER_POLE_DISTANCE)
    half_width = operator.real_spread + method["tail"]
    count = int(math.ceil(2 * half_width / step)) + 1
    return strip_contour(height, half_width, count)
