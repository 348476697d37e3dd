"""Order-preserving chunked map over a process pool.

Results are merged in chunk order, so outputs never depend on the number of
workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

MIN_CHUNK = 512


def default_workers():
    return os.cpu_count() or 1


def chunks(items, parts):
    parts = max(1, min(parts, len(items) // MIN_CHUNK or 1))
    size = -(-len(items) // parts) if items else 0
    return [items[i:i + size] for i in range(0, len(items), size)] or [items]


def chunked_map(fn, pack, items, workers=1):
    """Apply ``fn(pack(chunk))`` to chunks of ``items``; results in chunk order."""
    items = list(items)
    parts = chunks(items, workers or 1)
    if len(parts) == 1 or (workers or 1) <= 1:
        return [fn(pack(p)) for p in parts]
    with ProcessPoolExecutor(max_workers=min(workers, len(parts))) as pool:
        return list(pool.map(fn, [pack(p) for p in parts]))
