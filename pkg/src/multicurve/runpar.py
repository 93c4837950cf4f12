"""Deterministic parallel evaluation.

Work is split into fixed chunks and results are written back by index, so
the output is identical for any thread count; only wall time changes.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

CHUNK = 256


def ordered_map(fn, items, threads: int = 1) -> list:
    items = list(items)
    out = [None] * len(items)
    if threads <= 1 or len(items) <= CHUNK:
        for i, item in enumerate(items):
            out[i] = fn(item)
        return out

    def run(span):
        lo, hi = span
        for i in range(lo, hi):
            out[i] = fn(items[i])

    spans = [(lo, min(lo + CHUNK, len(items))) for lo in range(0, len(items), CHUNK)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(run, spans))
    return out
