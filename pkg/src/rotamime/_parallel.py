"""Deterministic chunked fan-out over a process pool.

Work is split into contiguous chunks whose boundaries depend only on the
input length, and results are concatenated in chunk order, so the output is
independent of the worker count.
"""
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

CHUNK = 64


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("ROTAMIME_JOBS", "1")))
    except ValueError:
        return 1


def map_chunks(fn, items: np.ndarray, make_args, jobs: int = 1, chunk: int = CHUNK):
    """Apply ``fn(make_args(chunk))`` over fixed-size chunks and concatenate."""
    chunks = [items[i:i + chunk] for i in range(0, len(items), chunk)] or [items[:0]]
    tasks = [make_args(c) for c in chunks]
    if jobs <= 1 or len(tasks) == 1:
        parts = [fn(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(fn, tasks))
    return _concat(parts)


def _concat(parts):
    first = parts[0]
    if isinstance(first, tuple):
        return tuple(np.concatenate([p[i] for p in parts]) for i in range(len(first)))
    return np.concatenate(parts)
