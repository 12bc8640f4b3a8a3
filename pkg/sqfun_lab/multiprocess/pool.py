from typing import Callable, Iterable, TypeVar

from multiprocess.pool import Pool  # pyright: ignore[reportMissingTypeStubs]

_T = TypeVar("_T")
_U = TypeVar("_U")


def use_map(processes: int) -> Callable[[Callable[[_T], _U], Iterable[_T]], list[_U]]:
    """Ordered ``map`` over a process pool; ``processes <= 1`` stays in-process."""
    if processes <= 1:
        return lambda func, items: list(map(func, items))

    def pooled_map(func: Callable[[_T], _U], items: Iterable[_T]) -> list[_U]:
        with Pool(processes) as pool:  # type: ignore
            return pool.map(func, list(items))  # type: ignore

    return pooled_map


def chunked(count: int, chunk_size: int) -> list[range]:
    """Split ``range(count)`` into consecutive ranges of at most ``chunk_size``."""
    assert chunk_size > 0, "chunk_size must be positive"
    return [range(start, min(start + chunk_size, count)) for start in range(0, count, chunk_size)]
