"""Type-2 clone detection over normalized method token streams."""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence


def clone_pairs(streams: Sequence[Sequence[str]], min_tokens: int) -> dict[tuple[int, int], int]:
    """Map each pair ``(a, b)`` with ``a < b`` sharing a run of ``min_tokens``
    equal tokens to the length of their longest common run.

    Every window of ``min_tokens`` tokens is bucketed by content; two streams
    clone each other exactly when they share a bucket.
    """
    L = int(min_tokens)
    if L < 1:
        raise ValueError("min_tokens must be positive")
    buckets: dict[tuple[str, ...], list[tuple[int, int]]] = defaultdict(list)
    for sid, toks in enumerate(streams):
        toks = tuple(toks)
        for i in range(len(toks) - L + 1):
            buckets[toks[i:i + L]].append((sid, i))
    hits: dict[tuple[int, int], set[tuple[int, int]]] = defaultdict(set)
    for occ in buckets.values():
        if len(occ) < 2:
            continue
        for x in range(len(occ)):
            for y in range(x + 1, len(occ)):
                (a, i), (b, j) = occ[x], occ[y]
                if a == b:
                    continue
                if a > b:
                    a, i, b, j = b, j, a, i
                hits[(a, b)].add((i, j))
    return {pair: _longest_run(starts) + L - 1 for pair, starts in hits.items()}


def _longest_run(starts: set[tuple[int, int]]) -> int:
    """Longest run of diagonal neighbours (i, j), (i+1, j+1), ..."""
    best = 0
    for i, j in starts:
        if (i - 1, j - 1) in starts:
            continue
        n = 1
        while (i + n, j + n) in starts:
            n += 1
        best = max(best, n)
    return best
