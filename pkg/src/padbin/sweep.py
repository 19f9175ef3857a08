"""Order-preserving parallel map over contiguous chunks of an input list."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import accumulate


def partition(items, parts: int, weight=None) -> list[list]:
    """Split ``items`` into at most ``parts`` contiguous chunks of roughly
    equal total weight. Deterministic for a given (items, parts)."""
    items = list(items)
    if parts <= 1 or len(items) <= 1:
        return [items] if items else []
    ws = [weight(x) if weight else 1 for x in items]
    total = sum(ws)
    chunks, start = [], 0
    cum = list(accumulate(ws))
    for c in range(1, parts):
        target = total * c / parts
        end = start
        while end < len(items) and cum[end] <= target:
            end += 1
        if end > start:
            chunks.append(items[start:end])
            start = end
    if start < len(items):
        chunks.append(items[start:])
    return chunks


def _run_chunk(args):
    func, chunk = args
    return [func(x) for x in chunk]


def ordered_map(func, items, threads: int = 1, weight=None) -> list:
    """[func(x) for x in items], optionally spread over worker processes.

    ``func`` must be picklable (a module-level function). Results come
    back in input order whatever the worker count.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    chunks = partition(items, threads, weight)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(_run_chunk, [(func, c) for c in chunks])
        return [r for part in parts for r in part]
