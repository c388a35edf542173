"""Exact clique counting, per-edge clique counts and the joint size ``js_r``.

Counting is pivot-free backtracking over candidate bitsets: a ``k``-clique
inside ``cand`` is enumerated by picking its lowest vertex ``v`` and recursing
into ``cand & N(v)`` restricted to ids above ``v``. Nothing is listed; only
counts are carried.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import Edge, Graph, GraphError, edge, iter_bits

__all__ = [
    "JointReport",
    "count_cliques",
    "count_cliques_in",
    "cliques_on_edge",
    "edge_clique_counts",
    "joint_size",
]


def count_cliques_in(g: Graph, cand: int, k: int) -> int:
    """Number of ``k``-cliques of ``g`` whose vertices all lie in bitset ``cand``."""
    if k == 0:
        return 1
    size = cand.bit_count()
    if size < k:
        return 0
    if k == 1:
        return size
    adj = g.adj
    if k == 2:
        total = 0
        for v in iter_bits(cand):
            total += (adj[v] & (cand >> (v + 1) << (v + 1))).bit_count()
        return total
    total = 0
    rest = cand
    while rest.bit_count() >= k:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        total += count_cliques_in(g, rest & adj[v], k - 1)
    return total


def count_cliques(g: Graph, r: int) -> int:
    """``k_r(G)``: the number of ``r``-vertex complete subgraphs."""
    if r < 1:
        raise ValueError("clique order must be at least 1")
    if r > g.n:
        return 0
    return count_cliques_in(g, g.vertex_mask, r)


def _on_edge(g: Graph, u: int, v: int, r: int) -> int:
    return count_cliques_in(g, g.adj[u] & g.adj[v], r - 2)


def cliques_on_edge(g: Graph, e: tuple[int, int], r: int) -> int:
    """Number of ``r``-cliques containing both endpoints of the edge ``e``."""
    if r < 2:
        raise ValueError("clique order must be at least 2")
    u, v = edge(*e)
    if v >= g.n or not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    return _on_edge(g, u, v, r)


def edge_clique_counts(g: Graph, r: int, edges: Optional[Iterable[Edge]] = None) -> dict[Edge, int]:
    """Map each edge (default: all edges) to its ``r``-clique count."""
    if edges is None:
        edges = g.edges()
    return {e: _on_edge(g, e.u, e.v, r) for e in edges}


@dataclass(frozen=True)
class JointReport:
    """``js_r(G)`` together with the lexicographically least edge attaining it."""

    size: int
    witness_edge: Optional[Edge] = None


def best_edge(counts: dict[Edge, int]) -> JointReport:
    """Deterministic reduction: maximum count, ties to the least edge."""
    best: Optional[Edge] = None
    best_count = 0
    for e, c in counts.items():
        if c > best_count or (c == best_count and c > 0 and e < best):
            best, best_count = e, c
    return JointReport(best_count, best)


def _chunk_best(args: tuple[Graph, int, list[Edge]]) -> JointReport:
    g, r, edges = args
    return best_edge(edge_clique_counts(g, r, edges))


def joint_size(g: Graph, r: int, workers: Optional[int] = None) -> JointReport:
    """Maximum number of ``r``-cliques sharing one edge.

    With ``workers > 1`` the per-edge counts are spread over a process pool;
    the reduction applies the same tie-break, so the report does not depend
    on scheduling.
    """
    if r < 2:
        raise ValueError("clique order must be at least 2")
    edges = g.edges()
    if not workers or workers <= 1 or len(edges) < 2 * workers:
        return best_edge(edge_clique_counts(g, r, edges))
    step = -(-len(edges) // workers)
    chunks = [(g, r, edges[i : i + step]) for i in range(0, len(edges), step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        partial = list(pool.map(_chunk_best, chunks))
    return best_edge({p.witness_edge: p.size for p in partial if p.witness_edge is not None})
