"""Distance to the Turan graph: induced ``r``-partite cores, trimming, explicit
edit sets, exact and heuristic edit distance, and the bound arithmetic.

"Distance to ``T_r(n)``" is the minimum, over vertex partitions with the
Turan size profile, of intra-part edges present plus cross-part edges absent.

Local search is deterministic. Restart 0 is the canonical assignment
``v -> v mod r``; restart ``i >= 1`` uses ``random.Random(i - 1)``. Vertices
are swept in ascending id and ties resolve to the smaller part index.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

import mpmath
from mpmath import mp

from ._numeric import DPS, Number, exact, hp
from .graph import Edge, Graph, GraphError, iter_bits, turan_part_sizes
from .reducer import theta

__all__ = [
    "ExactLimitExceeded",
    "PartiteCore",
    "ProofChain",
    "TrimError",
    "TuranEdit",
    "edit_distance_exact",
    "edit_distance_heuristic",
    "edits_from_partition",
    "extend_partition",
    "extract_partite_core",
    "fact1_bounds",
    "proof_chain",
    "refine_partition",
    "theorem_bound",
    "trim_target",
    "trim_to_size",
]

Partition = tuple[tuple[int, ...], ...]


class TrimError(ValueError):
    """A core part is smaller than the requested trim size."""


class ExactLimitExceeded(ValueError):
    """Graph too large for exhaustive partition enumeration."""


@dataclass(frozen=True)
class PartiteCore:
    host_vertices: tuple[int, ...]
    parts: Partition
    order: int
    min_degree: int

    @classmethod
    def build(cls, g: Graph, parts: Iterable[Iterable[int]]) -> PartiteCore:
        parts = normalize(parts)
        host = tuple(sorted(v for p in parts for v in p))
        mask = _mask(host)
        mindeg = min(((g.adj[v] & mask).bit_count() for v in host), default=0)
        return cls(host, parts, len(host), mindeg)

    def is_valid(self, g: Graph) -> bool:
        """Parts partition ``host_vertices`` and are independent in ``g``."""
        flat = [v for p in self.parts for v in p]
        if sorted(flat) != list(self.host_vertices) or len(set(flat)) != len(flat):
            return False
        return all(g.adj[v] & _mask(p) == 0 for p in self.parts for v in p)


@dataclass(frozen=True)
class TuranEdit:
    partition: Partition
    adds: tuple[Edge, ...]
    removes: tuple[Edge, ...]

    @property
    def count(self) -> int:
        return len(self.adds) + len(self.removes)


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def normalize(parts: Iterable[Iterable[int]]) -> Partition:
    """Sort each part; order nonempty parts by least element, empties last."""
    ps = [tuple(sorted(p)) for p in parts]
    full = sorted((p for p in ps if p), key=lambda p: p[0])
    return tuple(full) + tuple(p for p in ps if not p)


# -- bound arithmetic ---------------------------------------------------------


def fact1_bounds(n: int, r: int, alpha: Number, strict: bool = True) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Order and minimum-degree bounds ``(1 - sqrt(2a)) n`` and
    ``(1 - 1/r - 2 sqrt(2a)) n`` promised for the induced ``r``-partite core.

    The core statement needs ``0 < alpha < r**-8 / 8`` and ``n > r**8``. With
    ``strict`` a violation raises; otherwise it only warns.
    """
    a = exact(alpha)
    problems = []
    if not 0 < a < Fraction(1, 8 * r**8):
        problems.append(f"alpha must satisfy 0 < alpha < r^-8/8, got {a}")
    if n <= r**8:
        problems.append(f"n must exceed r^8 = {r**8}, got {n}")
    if problems:
        if strict:
            raise ValueError("; ".join(problems))
        warnings.warn("; ".join(problems), stacklevel=2)
    with mp.workdps(DPS):
        root = mpmath.sqrt(2 * hp(a))
        return (1 - root) * n, (1 - mpmath.mpf(1) / r - 2 * root) * n


def theorem_bound(n: int, r: int, eps: Number, c: Number) -> mpmath.mpf:
    """``(eps**(1/3) + c**(1/(3r+3))) * n**2``."""
    e, cc = exact(eps), exact(c)
    if e < 0 or cc < 0:
        raise ValueError("eps and c must be nonnegative")
    with mp.workdps(DPS):
        total = mpmath.mpf(0)
        if e:
            total += mpmath.cbrt(hp(e))
        if cc:
            total += mpmath.root(hp(cc), 3 * r + 3)
        return total * n * n


@dataclass(frozen=True)
class ProofChain:
    """Quantities of the stability argument for one ``(r, eps, c)``."""

    r: int
    alpha: mpmath.mpf  # eps + theta
    alpha_limit: mpmath.mpf  # r^-8 / 8
    edit_coeff: mpmath.mpf  # theta + (2r^2 - r) sqrt(2 alpha)
    bound_coeff: mpmath.mpf  # eps^(1/3) + c^(1/(3r+3))

    @property
    def slack_margin(self) -> mpmath.mpf:
        with mp.workdps(DPS):
            return self.alpha_limit - self.alpha

    @property
    def bound_margin(self) -> mpmath.mpf:
        with mp.workdps(DPS):
            return self.bound_coeff - self.edit_coeff

    @property
    def holds(self) -> bool:
        return self.slack_margin > 0 and self.bound_margin > 0


def proof_chain(r: int, eps: Number, c: Number) -> ProofChain:
    with mp.workdps(DPS):
        th = theta(c, r)
        alpha = hp(eps) + th
        edit = th + (2 * r * r - r) * mpmath.sqrt(2 * alpha)
        limit = mpmath.mpf(1) / (8 * mpmath.mpf(r) ** 8)
        bound = theorem_bound(1, r, eps, c)
        return ProofChain(r, alpha, limit, edit, bound)


def trim_target(n: int, r: int, eps: Number, c: Number) -> int:
    """``ceil((1/r - 2(r-1) sqrt(2(eps + theta))) n)``; may be nonpositive."""
    with mp.workdps(DPS):
        alpha = hp(eps) + theta(c, r)
        val = (mpmath.mpf(1) / r - 2 * (r - 1) * mpmath.sqrt(2 * alpha)) * n
        return int(mpmath.ceil(val))


# -- local search -------------------------------------------------------------


def _part_masks(assign: Sequence[int], r: int) -> list[int]:
    masks = [0] * r
    for v, p in enumerate(assign):
        if p >= 0:
            masks[p] |= 1 << v
    return masks


def _move_sweep(g: Graph, assign: list[int], masks: list[int]) -> None:
    """Single-vertex moves to the part with fewest neighbours, to a fixed point."""
    moved = True
    while moved:
        moved = False
        for v in range(g.n):
            cur = assign[v]
            if cur < 0:
                continue
            counts = [(g.adj[v] & m).bit_count() for m in masks]
            best = min(counts)
            if counts[cur] > best:
                new = counts.index(best)
                masks[cur] &= ~(1 << v)
                masks[new] |= 1 << v
                assign[v] = new
                moved = True


def _restart_assignments(n: int, r: int, restarts: int) -> list[list[int]]:
    starts = [[v % r for v in range(n)]]
    for seed in range(restarts):
        rng = random.Random(seed)
        starts.append([rng.randrange(r) for _ in range(n)])
    return starts


def _core_from(g: Graph, assign: list[int], r: int) -> PartiteCore:
    masks = _part_masks(assign, r)
    _move_sweep(g, assign, masks)
    deleted: list[int] = []
    while True:
        # (2) peel the vertex with most intra-part neighbours
        while True:
            worst, worst_deg = -1, 0
            for v in range(g.n):
                p = assign[v]
                if p >= 0:
                    d = (g.adj[v] & masks[p]).bit_count()
                    if d > worst_deg:
                        worst, worst_deg = v, d
            if worst < 0:
                break
            masks[assign[worst]] &= ~(1 << worst)
            assign[worst] = -1
            deleted.append(worst)
        # (3) re-sweep survivors, then re-admit peeled vertices into a part
        # where they have no neighbour
        _move_sweep(g, assign, masks)
        readmitted = False
        for v in sorted(deleted):
            for p, m in enumerate(masks):
                if g.adj[v] & m == 0:
                    masks[p] |= 1 << v
                    assign[v] = p
                    deleted.remove(v)
                    readmitted = True
                    break
        if not readmitted:
            break
    return PartiteCore.build(g, (list(iter_bits(m)) for m in masks))


def extract_partite_core(g: Graph, r: int, restarts: int = 4) -> PartiteCore:
    """Large induced ``r``-partite subgraph found by local search.

    Each restart: move-sweep to a fixed point, peel vertices with the most
    intra-part neighbours (ties: least id) until every part is independent,
    re-sweep and re-admit peeled vertices that fit a part, repeating to a
    fixed point. The best core (largest order, then larger minimum degree,
    then lexicographically least parts) wins. Validity is unconditional;
    the size bounds of :func:`fact1_bounds` are reported, not guaranteed.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    best: Optional[PartiteCore] = None
    for assign in _restart_assignments(g.n, r, restarts):
        core = _core_from(g, assign, r)
        key = (-core.order, -core.min_degree, core.parts)
        if best is None or key < (-best.order, -best.min_degree, best.parts):
            best = core
    return best


def trim_to_size(core: PartiteCore, g: Graph, target: int) -> PartiteCore:
    """Keep the ``target`` vertices of highest in-core degree in every part."""
    if target < 1:
        raise TrimError(f"trim target must be positive, got {target}")
    host = _mask(core.host_vertices)
    kept = []
    for p in core.parts:
        if len(p) < target:
            raise TrimError(f"part of size {len(p)} is smaller than target {target}")
        ranked = sorted(p, key=lambda v: (-(g.adj[v] & host).bit_count(), v))
        kept.append(ranked[:target])
    return PartiteCore.build(g, kept)


# -- edit sets ----------------------------------------------------------------


def _check_partition(n: int, partition: Sequence[Sequence[int]]) -> int:
    r = len(partition)
    if r < 1:
        raise GraphError("partition must have at least one part")
    flat = [v for p in partition for v in p]
    if sorted(flat) != list(range(n)):
        raise GraphError("partition must cover every vertex exactly once")
    if sorted((len(p) for p in partition), reverse=True) != turan_part_sizes(n, r):
        raise GraphError(f"part sizes do not match the Turan profile for n={n}, r={r}")
    return r


def edits_from_partition(g: Graph, partition: Sequence[Sequence[int]]) -> TuranEdit:
    """Edits turning ``g`` into the complete multipartite graph on ``partition``."""
    _check_partition(g.n, partition)
    part_of = [0] * g.n
    for i, p in enumerate(partition):
        for v in p:
            part_of[v] = i
    adds, removes = [], []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            same = part_of[u] == part_of[v]
            present = g.adj[u] >> v & 1
            if same and present:
                removes.append(Edge(u, v))
            elif not same and not present:
                adds.append(Edge(u, v))
    return TuranEdit(tuple(tuple(sorted(p)) for p in partition), tuple(adds), tuple(removes))


def edit_distance_exact(g: Graph, r: int, max_n: int = 12) -> TuranEdit:
    """Minimum edit set over every Turan-size partition (ties: least partition).

    Partitions are enumerated as blocks ordered by least element, so each
    unordered partition is seen once. Cost is exponential in ``n``; graphs
    with more than ``max_n`` vertices are refused.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    if g.n > max_n:
        raise ExactLimitExceeded(f"n = {g.n} exceeds exact limit {max_n}")
    sizes = [s for s in turan_part_sizes(g.n, r) if s > 0]
    empties = r - len(sizes)
    adj = g.adj
    best_intra = [None]
    best_parts: list[Optional[Partition]] = [None]
    blocks: list[tuple[int, ...]] = []

    def rec(remaining: int, left: list[int], intra: int) -> None:
        if best_intra[0] is not None and intra > best_intra[0]:
            return
        if not remaining:
            parts = tuple(blocks)
            if best_intra[0] is None or (intra, parts) < (best_intra[0], best_parts[0]):
                best_intra[0], best_parts[0] = intra, parts
            return
        low = remaining & -remaining
        v = low.bit_length() - 1
        rest = list(iter_bits(remaining ^ low))
        for size in sorted(set(left)):
            left.remove(size)
            for others in combinations(rest, size - 1):
                block = (v,) + others
                bm = _mask(block)
                inner = sum((adj[x] & bm).bit_count() for x in block) // 2
                blocks.append(block)
                rec(remaining & ~bm, left, intra + inner)
                blocks.pop()
            left.append(size)
            left.sort()

    rec(g.vertex_mask, sorted(sizes), 0)
    parts = best_parts[0] + ((),) * empties
    return edits_from_partition(g, parts)


def _swap_search(g: Graph, assign: list[int], masks: list[int]) -> None:
    """First-improvement pair swaps between parts; part sizes are preserved."""
    adj = g.adj
    improved = True
    while improved:
        improved = False
        for u in range(g.n):
            for v in range(u + 1, g.n):
                a, b = assign[u], assign[v]
                if a == b:
                    continue
                link = adj[u] >> v & 1
                delta = (
                    (adj[u] & masks[b]).bit_count()
                    - (adj[u] & masks[a]).bit_count()
                    + (adj[v] & masks[a]).bit_count()
                    - (adj[v] & masks[b]).bit_count()
                    - 2 * link
                )
                if delta < 0:
                    masks[a] ^= (1 << u) | (1 << v)
                    masks[b] ^= (1 << u) | (1 << v)
                    assign[u], assign[v] = b, a
                    improved = True


def refine_partition(g: Graph, partition: Sequence[Sequence[int]]) -> TuranEdit:
    """Swap-improve a Turan-size partition and return its edit set."""
    r = _check_partition(g.n, partition)
    assign = [0] * g.n
    for i, p in enumerate(partition):
        for v in p:
            assign[v] = i
    masks = _part_masks(assign, r)
    _swap_search(g, assign, masks)
    return edits_from_partition(g, normalize(list(iter_bits(m)) for m in masks))


def edit_distance_heuristic(g: Graph, r: int, restarts: int = 8) -> TuranEdit:
    """Upper bound on the distance to ``T_r(n)`` by restarted swap search.

    Restart 0 is the canonical partition; restart ``i`` shuffles the canonical
    part labels with ``random.Random(i - 1)``. Best result by edit count,
    then least normalized partition.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    best: Optional[TuranEdit] = None
    canonical = [v % r for v in range(g.n)]
    starts = [canonical]
    for seed in range(restarts):
        perm = list(range(g.n))
        random.Random(seed).shuffle(perm)
        labels = [0] * g.n
        for i, v in enumerate(perm):
            labels[v] = i % r
        starts.append(labels)
    for assign in starts:
        parts = [[v for v in range(g.n) if assign[v] == p] for p in range(r)]
        cand = refine_partition(g, parts)
        if best is None or (cand.count, normalize(cand.partition)) < (best.count, normalize(best.partition)):
            best = cand
    return best


def extend_partition(g: Graph, parts: Sequence[Sequence[int]], r: int) -> Partition:
    """Grow ``parts`` into a Turan-size partition of all vertices.

    Unplaced vertices go, in ascending id, to the part with spare capacity
    that adds the fewest edits (neighbours already inside the part plus
    non-neighbours already placed elsewhere); ties go to the lower index.
    Capacities follow the Turan profile with the larger parts first.
    """
    caps = turan_part_sizes(g.n, r)
    parts = [list(p) for p in parts] + [[] for _ in range(r - len(parts))]
    order = sorted(range(r), key=lambda i: -len(parts[i]))
    # larger existing parts get the larger capacities
    cap = [0] * r
    for i, c in zip(order, caps):
        cap[i] = c
    if any(len(parts[i]) > cap[i] for i in range(r)):
        raise GraphError("seed parts exceed Turan capacities")
    masks = [_mask(p) for p in parts]
    placed = 0
    for m in masks:
        placed |= m
    for v in range(g.n):
        if placed >> v & 1:
            continue
        best_i, best_cost = -1, None
        for i in range(r):
            if len(parts[i]) >= cap[i]:
                continue
            inside = (g.adj[v] & masks[i]).bit_count()
            others = placed & ~masks[i]
            missing = others.bit_count() - (g.adj[v] & others).bit_count()
            cost = inside + missing
            if best_cost is None or cost < best_cost:
                best_i, best_cost = i, cost
        parts[best_i].append(v)
        masks[best_i] |= 1 << v
        placed |= 1 << v
    return tuple(tuple(sorted(p)) for p in parts)
