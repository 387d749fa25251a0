import logging
from functools import cache, wraps
from itertools import product
from time import perf_counter
from typing import Callable, Iterable, Iterator, Sequence, TypeVar

# Necessary for python < 3.10, could be directly imported from typing
from typing_extensions import ParamSpec

P = ParamSpec("P")
R = TypeVar("R")
T = TypeVar("T")

logger = logging.getLogger(__name__)


def typed_cache(func: Callable[P, R]) -> Callable[P, R]:
    """Because the builtin cache throws away basically all type annotations.
    Use this as a function/method decorator to preserve type information."""
    return cache(func)  # type: ignore


def timed(func: Callable[P, R]) -> Callable[P, tuple[R, float]]:
    """Return the wrapped result together with the wall time it took."""

    @wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> tuple[R, float]:
        start = perf_counter()
        result = func(*args, **kwargs)
        elapsed = perf_counter() - start
        logger.debug("%s took %.3fs", func.__name__, elapsed)
        return result, elapsed

    return wrapper


def words_up_to(letters: Sequence[T], length: int, start: int = 0) -> Iterator[tuple[T, ...]]:
    """All words over `letters` with length in [start, length], shortest first."""
    for n in range(start, length + 1):
        yield from product(letters, repeat=n)


def exponent_vectors(size: int, degree: int) -> Iterator[tuple[int, ...]]:
    """Non-negative exponent vectors of total degree at most `degree`."""
    for total in range(degree + 1):
        yield from _compositions(size, total)


def _compositions(size: int, total: int) -> Iterator[tuple[int, ...]]:
    if size == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(size - 1, total - first):
            yield (first,) + rest


def unique(items: Iterable[T]) -> list[T]:
    seen: list[T] = []
    for item in items:
        if item not in seen:
            seen.append(item)
    return seen
