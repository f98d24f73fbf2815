"""Independent brute-force references for the property tests."""

from __future__ import annotations

from itertools import combinations

import numpy as np


def longest_common_run(a: list[str], b: list[str]) -> int:
    """Longest common contiguous substring length, O(len(a) * len(b)) dynamic programming."""
    if not a or not b:
        return 0
    vocab = {t: i for i, t in enumerate(sorted(set(a) | set(b)))}
    ya = np.array([vocab[t] for t in a])
    yb = np.array([vocab[t] for t in b])
    prev = np.zeros(len(yb) + 1, dtype=np.int64)
    best = 0
    for x in ya:
        cur = np.zeros_like(prev)
        cur[1:] = np.where(yb == x, prev[:-1] + 1, 0)
        best = max(best, int(cur.max()))
        prev = cur
    return best


def brute_clone_pairs(streams: list[list[str]], min_tokens: int) -> dict[tuple[int, int], int]:
    out = {}
    for a, b in combinations(range(len(streams)), 2):
        n = longest_common_run(streams[a], streams[b])
        if n >= min_tokens:
            out[(a, b)] = n
    return out


def reachable_by_paths(n: int, edges: set[tuple[int, int]]) -> set[tuple[int, int]]:
    """(u, v) for every non-empty path u -> v, by enumerating simple paths exhaustively."""
    succ = {u: sorted(v for (x, v) in edges if x == u) for u in range(n)}
    reach: set[tuple[int, int]] = set()

    def walk(start: int, node: int, visited: tuple[int, ...]) -> None:
        for nxt in succ[node]:
            reach.add((start, nxt))
            if nxt not in visited:
                walk(start, nxt, visited + (nxt,))

    for u in range(n):
        walk(u, u, (u,))
    return reach


def brute_cyclic_components(n: int, edges: set[tuple[int, int]]) -> list[list[int]]:
    reach = reachable_by_paths(n, edges)
    on_cycle = [u for u in range(n) if (u, u) in reach]
    comps: list[list[int]] = []
    for u in on_cycle:
        if any(u in c for c in comps):
            continue
        comps.append(sorted(v for v in on_cycle if v == u or ((u, v) in reach and (v, u) in reach)))
    return sorted(comps)


def brute_partition(n: int, edges: set[tuple[int, int]]) -> list[list[int]]:
    reach = reachable_by_paths(n, edges)
    comps: list[list[int]] = []
    for u in range(n):
        if not any(u in c for c in comps):
            comps.append(sorted(v for v in range(n) if v == u or ((u, v) in reach and (v, u) in reach)))
    return sorted(comps)


def pair_cohesion(field_sets: list[set[str]]) -> float:
    """Share of method pairs touching a common field, counted pair by pair."""
    if len(field_sets) < 2:
        return 1.0
    total = shared = 0
    for i in range(len(field_sets)):
        for j in range(i + 1, len(field_sets)):
            total += 1
            shared += bool(field_sets[i] & field_sets[j])
    return shared / total
