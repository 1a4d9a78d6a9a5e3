from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import TYPE_CHECKING

from django.conf import settings

from .settings import homlab_settings

if TYPE_CHECKING:
    from .typing import Any, Callable, Iterable, Iterator, Mask, Optional, TypeVar

    T = TypeVar("T")
    R = TypeVar("R")


__all__ = [
    "homlab_logger",
    "iter_bits",
    "mask_of",
    "parallel_map",
    "popcount",
    "resolve_jobs",
]


homlab_logger = logging.getLogger("homlab")


def popcount(mask: Mask) -> int:
    return bin(mask).count("1")


def iter_bits(mask: Mask) -> Iterator[int]:
    """Iterate the positions of the set bits of the mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> Mask:
    mask = 0
    for vertex in vertices:
        mask |= 1 << vertex
    return mask


def resolve_jobs(jobs: Optional[int] = None) -> int:
    """
    Resolve the number of worker processes to use.

    :param jobs: Explicit worker count. Falls back to the `JOBS` setting, where zero means all CPUs.
    """
    if jobs is None:
        jobs = homlab_settings.JOBS
    if jobs <= 0:
        jobs = os.cpu_count() or 1
    return jobs


def _initialize_worker(overrides: dict[str, Any]) -> None:
    """Spawned workers start without configured settings."""
    if not settings.configured:
        from .bootstrap import setup

        setup(overrides=overrides)


def parallel_map(func: Callable[[T], R], items: Iterable[T], *, jobs: Optional[int] = None) -> list[R]:
    """
    Map `func` over `items`, in worker processes if more than one job is requested.

    Results are always returned in input order, so the outcome does not depend on the worker count.
    `func` must be a module level function when more than one job is used.

    :param func: Function to apply.
    :param items: Inputs for the function.
    :param jobs: Number of worker processes, see `resolve_jobs`.
    """
    items = list(items)
    workers = min(resolve_jobs(jobs), len(items))
    if workers <= 1:
        return [func(item) for item in items]

    chunksize = max(1, len(items) // (workers * 4))
    overrides = dict(getattr(settings, "HOMLAB", {}))
    with ProcessPoolExecutor(max_workers=workers, initializer=_initialize_worker, initargs=(overrides,)) as executor:
        return list(executor.map(func, items, chunksize=chunksize))
