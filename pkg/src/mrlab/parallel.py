"""Process pool with ordered results, so parallel scans reduce exactly like sequential ones."""

from __future__ import annotations

import atexit
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
U = TypeVar("U")

_pools: dict[int, ProcessPoolExecutor] = {}


def get_pool(workers: int) -> ProcessPoolExecutor:
    pool = _pools.get(workers)
    if pool is None:
        ctx = multiprocessing.get_context("fork")
        pool = ProcessPoolExecutor(max_workers=workers, mp_context=ctx)
        _pools[workers] = pool
    return pool


@atexit.register
def shutdown_pools() -> None:
    for pool in _pools.values():
        pool.shutdown(wait=False, cancel_futures=True)
    _pools.clear()


def ordered_map(fn: Callable[[T], U], items: Iterable[T], workers: int) -> Iterator[U]:
    """Yield fn(item) in input order; the caller may stop early."""
    items = list(items)
    if workers <= 1:
        for item in items:
            yield fn(item)
        return
    pool = get_pool(workers)
    futures = [pool.submit(fn, item) for item in items]
    try:
        for fut in futures:
            yield fut.result()
    finally:
        for fut in futures:
            fut.cancel()
