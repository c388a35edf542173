"""Brute-force reference implementations.

These share no code with the fast paths beyond the :class:`Graph` type and
exist to cross-check them on small inputs (``oracle`` CLI subcommand, tests).
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional, Sequence

from .graph import Graph, turan_part_sizes


def is_clique(g: Graph, vertices: Sequence[int]) -> bool:
    return all(g.has_edge(a, b) for a, b in combinations(vertices, 2))


def count_cliques(g: Graph, k: int) -> int:
    return sum(1 for s in combinations(range(g.n), k) if is_clique(g, s))


def cliques_on_edge(g: Graph, u: int, v: int, k: int) -> int:
    others = [w for w in range(g.n) if w not in (u, v)]
    return sum(1 for s in combinations(others, k - 2) if is_clique(g, (u, v) + s))


def joint_size(g: Graph, k: int) -> tuple[int, Optional[tuple[int, int]]]:
    best, witness = 0, None
    for u, v in combinations(range(g.n), 2):
        if g.has_edge(u, v):
            c = cliques_on_edge(g, u, v, k)
            if c > best:
                best, witness = c, (u, v)
    return best, witness


def edit_distance(g: Graph, r: int) -> tuple[int, list[int]]:
    """Minimum symmetric difference to a labelled ``T_r(n)``, by enumerating
    every assignment vector ``V -> [r]`` in which label ``p`` receives the
    ``p``-th Turan part size."""
    caps = turan_part_sizes(g.n, r)
    pairs = list(combinations(range(g.n), 2))
    adjacent = [g.has_edge(a, b) for a, b in pairs]
    best, best_assign = None, None
    assign = [0] * g.n

    def rec(v: int) -> None:
        nonlocal best, best_assign
        if v == g.n:
            diff = sum(
                (assign[a] != assign[b]) != e for (a, b), e in zip(pairs, adjacent)
            )
            if best is None or diff < best:
                best, best_assign = diff, list(assign)
            return
        for p in range(r):
            if caps[p]:
                caps[p] -= 1
                assign[v] = p
                rec(v + 1)
                caps[p] += 1

    rec(0)
    return best, best_assign


def find_multipartite(g: Graph, sizes: Sequence[int]) -> Optional[list[tuple[int, ...]]]:
    """Enumerate disjoint class assignments of the given sizes; return the
    first one whose cross-class pairs are all edges."""

    def rec(i: int, used: frozenset, classes: list[tuple[int, ...]]):
        if i == len(sizes):
            return list(classes)
        free = [v for v in range(g.n) if v not in used]
        for cls in combinations(free, sizes[i]):
            if all(g.has_edge(a, b) for prev in classes for a in prev for b in cls):
                found = rec(i + 1, used | set(cls), classes + [cls])
                if found is not None:
                    return found
        return None

    if sum(sizes) > g.n:
        return None
    return rec(0, frozenset(), [])
