"""Deterministic parallel mapping over pure tasks.

Results are returned in input order regardless of completion order, so
outputs are identical across parallelism degrees.  The degree comes from
the FFR_THREADS environment variable unless given explicitly.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_count(explicit: int | None = None) -> int:
    if explicit is not None:
        return max(1, int(explicit))
    env = os.environ.get("FFR_THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def parallel_map(fn: Callable[[T], R], items: Sequence[T],
                 threads: int | None = None) -> list[R]:
    n = thread_count(threads)
    items = list(items)
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
