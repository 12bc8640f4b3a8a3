from typing import Callable, TypeVar

T = TypeVar("T")

_UNSET = object()


def lazy_val(func: Callable[[], T]) -> Callable[[], T]:
    """
    Decorator for lazy evaluation of a function.

    The first call evaluates ``func`` and every later call returns the cached
    value, including falsy ones such as ``0.0`` or an empty array list.

    Args:
        func (Callable[[], T]): A function that takes no arguments and returns a value of type T.

    Returns:
        Callable[[], T]: A function that lazily evaluates the decorated function.
    """
    value: object = _UNSET

    def wrapper() -> T:
        nonlocal value
        if value is _UNSET:
            value = func()
        return value  # type: ignore[return-value]

    return wrapper
