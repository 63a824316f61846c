"""Small shared helpers."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "TACTICS_LAB_THREADS"


def thread_cap(default: int = 1) -> int:
    """Worker cap from the TACTICS_LAB_THREADS environment variable."""
    raw = os.environ.get(THREADS_ENV, "")
    try:
        n = int(raw)
    except ValueError:
        return default
    return max(1, n)


def parallel_map(fn: Callable[[T], R], items: Sequence[T],
                 max_workers: int = 1) -> List[R]:
    """Map ``fn`` over ``items`` preserving input order.

    Results are identical to the serial map regardless of worker count;
    parallelism never reorders the reduction.
    """
    if max_workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(fn, items))
