"""Chunked work dispatch for the sampling harnesses.

Worker count comes from the INTRINSIC_METRICS_THREADS environment variable
and defaults to 1.  Samples are pre-generated by a single seeded generator
and split into fixed row ranges, so the merged result is identical for any
worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

_ENV_VAR = "INTRINSIC_METRICS_THREADS"


def worker_count() -> int:
    raw = os.environ.get(_ENV_VAR, "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def chunk_ranges(total: int, chunk: int) -> list[tuple[int, int]]:
    if total <= 0:
        return []
    return [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]


def map_chunks(func, total: int, chunk: int = 16384) -> list:
    """Apply func(lo, hi) over row ranges, in order, possibly on threads.

    Results come back ordered by range regardless of scheduling, so any
    reduction over them is deterministic.
    """
    ranges = chunk_ranges(total, chunk)
    workers = worker_count()
    if workers <= 1 or len(ranges) <= 1:
        return [func(lo, hi) for lo, hi in ranges]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda r: func(*r), ranges))


def concat_chunks(parts: list) -> np.ndarray:
    if len(parts) == 1:
        return parts[0]
    return np.concatenate(parts)
