class DimensionMismatchError(ValueError):
    pass


class MethodMismatchError(ValueError):
    pass


class GridMismatchError(ValueError):
    pass


class ContourMarginError(ValueError):
    """Contour too close to the spectrum or outside the function's strip."""


class NotElementaryError(ValueError):
    pass


class ParameterRangeError(ValueError):
    pass


class DivergenceError(ValueError):
    """A normalizer or tail integral failed the truncation-doubling test."""


class BoundViolationError(ValueError):
    """A computed quantity exceeds an inequality it is guaranteed to satisfy."""
