"""Immutable simple graphs on vertices ``0..n-1`` backed by adjacency bitsets.

Every vertex carries an ``int`` bitmask of its neighbours, so neighbourhood
intersection (the inner loop of all clique and multipartite searches) is a
single ``&``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

__all__ = [
    "Edge",
    "Graph",
    "GraphError",
    "apply_edits",
    "all_pairs",
    "complete_multipartite",
    "edge",
    "format_edge_list",
    "induced_subgraph",
    "iter_bits",
    "parse_edge_list",
    "planted_turan",
    "random_graph",
    "read_edge_list",
    "turan_graph",
    "turan_part_sizes",
    "write_edge_list",
]


class GraphError(ValueError):
    """Malformed graph input or violated operation precondition."""


class Edge(NamedTuple):
    u: int
    v: int


def edge(a: int, b: int) -> Edge:
    """Canonical edge with ``u < v``."""
    if a == b:
        raise GraphError(f"self-loop at vertex {a}")
    return Edge(a, b) if a < b else Edge(b, a)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph. ``adj[v]`` is the neighbour bitmask of ``v``."""

    n: int
    adj: tuple[int, ...]
    _m: int = field(default=-1, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError("adjacency length must equal n")
        if self._m < 0:
            object.__setattr__(self, "_m", sum(a.bit_count() for a in self.adj) // 2)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"vertex out of range in edge ({a}, {b})")
            if a == b:
                raise GraphError(f"self-loop at vertex {a}")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)), comb(n, 2))

    @property
    def order(self) -> int:
        """``|G|``, the number of vertices."""
        return self.n

    @property
    def num_edges(self) -> int:
        """``e(G)``."""
        return self._m

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def min_degree(self) -> int:
        """``delta(G)``; 0 for the empty vertex set."""
        return min((a.bit_count() for a in self.adj), default=0)

    def edges(self) -> list[Edge]:
        """All edges in lexicographic order."""
        out = []
        for u, a in enumerate(self.adj):
            for v in iter_bits(a >> (u + 1)):
                out.append(Edge(u, u + 1 + v))
        return out

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.n))

    def __len__(self) -> int:
        return self.n


def turan_part_sizes(n: int, r: int) -> list[int]:
    """Part sizes of ``T_r(n)``: ``n mod r`` parts of ``ceil(n/r)``, then ``floor(n/r)``."""
    if r < 1:
        raise GraphError("part count r must be at least 1")
    q, rem = divmod(n, r)
    return [q + 1] * rem + [q] * (r - rem)


def turan_graph(n: int, r: int) -> Graph:
    """Complete ``r``-partite graph ``T_r(n)``; vertex ``v`` lies in part ``v mod r``."""
    if r < 1:
        raise GraphError("part count r must be at least 1")
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    part_masks = [0] * r
    for v in range(n):
        part_masks[v % r] |= 1 << v
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~part_masks[v % r] for v in range(n)))


def complete_multipartite(sizes: Iterable[int]) -> Graph:
    """Complete multipartite graph with consecutive vertex blocks of the given sizes."""
    sizes = list(sizes)
    if any(s < 1 for s in sizes):
        raise GraphError("part sizes must be positive")
    n = sum(sizes)
    full = (1 << n) - 1
    adj: list[int] = []
    start = 0
    for s in sizes:
        block = ((1 << s) - 1) << start
        adj.extend([full & ~block] * s)
        start += s
    return Graph(n, tuple(adj))


def _pair_from_index(n: int, idx: int) -> Edge:
    # Inverse of the lexicographic ranking of pairs (u, v), u < v.
    u = 0
    row = n - 1
    while idx >= row:
        idx -= row
        u += 1
        row -= 1
    return Edge(u, u + 1 + idx)


def random_graph(n: int, m: int, seed: int) -> Graph:
    """Uniform ``m``-edge graph on ``n`` vertices.

    Scheme: ``random.Random(seed).sample(range(C(n, 2)), m)`` over the
    lexicographic ranks of vertex pairs (Mersenne Twister, integer seed).
    Identical ``(n, m, seed)`` give identical graphs on every platform.
    """
    total = comb(n, 2)
    if not 0 <= m <= total:
        raise GraphError(f"edge count {m} outside [0, {total}]")
    ranks = random.Random(seed).sample(range(total), m)
    return Graph.from_edges(n, (_pair_from_index(n, i) for i in ranks))


def planted_turan(n: int, r: int, flips: int, seed: int) -> Graph:
    """``T_r(n)`` with ``flips`` distinct vertex pairs toggled.

    Pairs are drawn as in :func:`random_graph`. Under the canonical partition
    each flip costs exactly one edit, so the distance to ``T_r(n)`` is at most
    ``flips``.
    """
    total = comb(n, 2)
    if not 0 <= flips <= total:
        raise GraphError(f"flip count {flips} outside [0, {total}]")
    adj = list(turan_graph(n, r).adj)
    for i in random.Random(seed).sample(range(total), flips):
        u, v = _pair_from_index(n, i)
        adj[u] ^= 1 << v
        adj[v] ^= 1 << u
    return Graph(n, tuple(adj))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``vertices``, relabelled ``0..k-1`` in ascending order.

    Returns the subgraph and the map from new ids back to ids of ``g``.
    """
    keep = sorted(set(vertices))
    if keep and (keep[0] < 0 or keep[-1] >= g.n):
        raise GraphError("vertex out of range in induced subgraph")
    index = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        mask = 0
        for w in iter_bits(g.adj[v]):
            i = index.get(w)
            if i is not None:
                mask |= 1 << i
        adj.append(mask)
    return Graph(len(keep), tuple(adj)), keep


def apply_edits(
    g: Graph, adds: Iterable[tuple[int, int]], removes: Iterable[tuple[int, int]]
) -> Graph:
    """Return ``(E(g) - removes) | adds``; rejects edits that are not well-formed."""
    adds = {edge(*e) for e in adds}
    removes = {edge(*e) for e in removes}
    if adds & removes:
        raise GraphError("an edge is both added and removed")
    adj = list(g.adj)
    for u, v in adds:
        if v >= g.n:
            raise GraphError(f"vertex out of range in ({u}, {v})")
        if g.has_edge(u, v):
            raise GraphError(f"cannot add existing edge ({u}, {v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    for u, v in removes:
        if v >= g.n or not g.has_edge(u, v):
            raise GraphError(f"cannot remove non-edge ({u}, {v})")
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return Graph(g.n, tuple(adj), g.num_edges + len(adds) - len(removes))


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format (0 <= u < v < n)."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise GraphError("missing 'n m' header")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        pairs = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if n < 0:
        raise GraphError("negative vertex count")
    if len(pairs) != m:
        raise GraphError(f"header declares {m} edges, found {len(pairs)}")
    seen: set[tuple[int, int]] = set()
    for u, v in pairs:
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not 0 <= u < v < n:
            raise GraphError(f"edge ({u}, {v}) violates 0 <= u < v < n")
        if (u, v) in seen:
            raise GraphError(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
    return Graph.from_edges(n, pairs)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g))


def all_pairs(n: int) -> Iterator[Edge]:
    return (Edge(u, v) for u, v in combinations(range(n), 2))
