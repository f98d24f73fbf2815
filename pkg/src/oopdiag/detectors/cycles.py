"""Strongly connected components for dependency-cycle detection."""

from __future__ import annotations

from typing import Hashable, Iterable


def strongly_connected(nodes: Iterable[Hashable], edges: Iterable[tuple[Hashable, Hashable]]) -> list[list]:
    """Tarjan's algorithm, iterative. Components and their members come back sorted."""
    order = sorted(set(nodes))
    succ: dict = {v: [] for v in order}
    for a, b in edges:
        if a in succ and b in succ:
            succ[a].append(b)
    for v in succ:
        succ[v] = sorted(set(succ[v]))
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    comps: list[list] = []
    counter = 0
    for root in order:
        if root in index:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, pos = work[-1]
            if pos < len(succ[v]):
                work[-1] = (v, pos + 1)
                w = succ[v][pos]
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return sorted(comps)


def cyclic_components(nodes: Iterable[Hashable], edges: Iterable[tuple[Hashable, Hashable]]) -> list[list]:
    """Components of size >= 2, plus single nodes with a self-loop."""
    edges = list(edges)
    loops = {a for a, b in edges if a == b}
    return [c for c in strongly_connected(nodes, edges) if len(c) > 1 or c[0] in loops]
