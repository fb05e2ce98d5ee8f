"""Deterministic fan-out for independent subset and fiber checks.

Results always come back in task order, so verdicts and witnesses do not
depend on the worker count.
"""

from __future__ import annotations

from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def run_ordered(fn: Callable[[T], R], tasks: Iterable[T], workers: int = 1) -> list[R]:
    """Map fn over tasks, preserving order; processes are used when workers > 1.

    The callable and the tasks must be picklable for the parallel path.
    """
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    from concurrent.futures import ProcessPoolExecutor

    chunksize = max(1, len(tasks) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=chunksize))
