"""The edge-deletion loop driven by the joint size ``js_{r+1}``.

While some edge lies in more than ``threshold`` cliques of order ``r + 1``,
the edge with the most such cliques (least edge on ties) is deleted. Every
deletion is logged with its clique count so that the sum of the log is a
lower bound on ``k_{r+1}`` of the input graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Union

import mpmath
from mpmath import mp

from ._numeric import DPS, Number, exact, hp
from .cliques import _on_edge, best_edge
from .graph import Edge, Graph, iter_bits

__all__ = ["RemovalTrace", "paper_threshold", "run_procedure", "theta"]


def paper_threshold(n: int, r: int) -> Fraction:
    """``n**(r-1) / r**(r+6)`` as an exact rational."""
    if r < 2:
        raise ValueError("r must be at least 2")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Fraction(n ** (r - 1), r ** (r + 6))


def theta(c: Number, r: int) -> mpmath.mpf:
    """``c**(1/(r+1)) * r**(r+6)`` in high precision."""
    if r < 2:
        raise ValueError("r must be at least 2")
    cq = exact(c)
    if cq < 0:
        raise ValueError("c must be nonnegative")
    with mp.workdps(DPS):
        if cq == 0:
            return mpmath.mpf(0)
        return mpmath.root(hp(cq), r + 1) * mpmath.mpf(r) ** (r + 6)


@dataclass(frozen=True)
class RemovalTrace:
    steps: tuple[tuple[Edge, int], ...] = ()
    threshold_used: Fraction = Fraction(0)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def total(self) -> int:
        """Sum of per-step clique counts (cliques destroyed)."""
        return sum(c for _, c in self.steps)

    @property
    def edges(self) -> list[Edge]:
        return [e for e, _ in self.steps]

    def to_text(self) -> str:
        lines = [f"# threshold {self.threshold_used}"]
        lines += [f"{e.u} {e.v} {c}" for e, c in self.steps]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> RemovalTrace:
        threshold = Fraction(0)
        steps = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(" ")
                if key == "threshold":
                    threshold = Fraction(value)
                continue
            u, v, c = (int(x) for x in line.split())
            steps.append((Edge(u, v), c))
        return cls(tuple(steps), threshold)

    def write(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_text())


def run_procedure(g: Graph, r: int, threshold: Number) -> tuple[Graph, RemovalTrace]:
    """Delete edges while ``js_{r+1}`` exceeds ``threshold``.

    Per-edge counts are kept in a table. Deleting ``uv`` can only change the
    count of an edge whose endpoints both lie in ``{u, v} | (N(u) & N(v))``,
    since any ``(r+1)``-clique through ``u``, ``v`` and that edge needs them
    adjacent to both; exactly those entries are recomputed after each step.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    thr = exact(threshold)
    if thr < 0:
        raise ValueError("threshold must be nonnegative")
    k = r + 1
    adj = list(g.adj)
    work = Graph(g.n, tuple(adj))
    counts = {e: _on_edge(work, e.u, e.v, k) for e in work.edges()}
    steps: list[tuple[Edge, int]] = []
    while True:
        report = best_edge(counts)
        if report.size <= thr:
            break
        e = report.witness_edge
        u, v = e
        affected = adj[u] & adj[v] | (1 << u) | (1 << v)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        del counts[e]
        steps.append((e, report.size))
        work = Graph(g.n, tuple(adj))
        for a in iter_bits(affected):
            for b in iter_bits(adj[a] & affected & ~((2 << a) - 1)):
                counts[Edge(a, b)] = _on_edge(work, a, b, k)
    return work, RemovalTrace(tuple(steps), thr)
