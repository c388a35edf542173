"""Complete multipartite subgraphs ``K(s, ..., s, t)``: size profiles, an
exact pruned search, a greedy fast path and a witness checker.

Witnesses are subgraphs, not induced: only cross-class pairs must be edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import mpmath
from mpmath import mp

from ._numeric import DPS, Number, exact, hp
from .graph import Graph, iter_bits

__all__ = [
    "MultipartiteWitness",
    "ProfileError",
    "SearchBudgetExceeded",
    "SizeProfile",
    "Verdict",
    "fact2_parameters",
    "find_multipartite_exact",
    "find_multipartite_greedy",
    "theorem1_profile",
    "verify_witness",
]


class ProfileError(ValueError):
    """Parameters too small (or out of range) for a meaningful size profile."""


class SearchBudgetExceeded(RuntimeError):
    """The exact search ran out of work budget before deciding existence."""

    def __init__(self, budget: int) -> None:
        super().__init__(f"search budget of {budget} nodes exhausted")
        self.budget = budget


@dataclass(frozen=True)
class SizeProfile:
    """``r_small`` classes of size ``s`` followed by one class of size ``t``."""

    r_small: int
    s: int
    t: int

    def __post_init__(self) -> None:
        if self.r_small < 1 or self.s < 1 or self.t < 1:
            raise ProfileError(f"profile entries must be positive: {self}")

    @property
    def sizes(self) -> tuple[int, ...]:
        return (self.s,) * self.r_small + (self.t,)

    @property
    def total(self) -> int:
        return self.r_small * self.s + self.t

    @classmethod
    def parse(cls, text: str) -> SizeProfile:
        """``"s,s,t"`` -> profile; all but the last entry must agree."""
        sizes = [int(x) for x in text.replace(" ", "").split(",") if x]
        if len(sizes) < 2 or len(set(sizes[:-1])) != 1:
            raise ProfileError(f"expected 's,...,s,t', got {text!r}")
        return cls(len(sizes) - 1, sizes[0], sizes[-1])


@dataclass(frozen=True)
class MultipartiteWitness:
    parts: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, parts: Iterable[Iterable[int]]) -> MultipartiteWitness:
        return cls(tuple(tuple(sorted(p)) for p in parts))

    def to_lines(self) -> str:
        return "\n".join(" ".join(map(str, p)) for p in self.parts) + "\n"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


def fact2_parameters(n: int, r: int, c: Number) -> SizeProfile:
    """``s = floor(c**r ln n)``, ``t = ceil(n**(1 - c**(r-1)))``, ``r - 1`` small classes.

    Requires ``c**r ln n >= 1``.
    """
    if r < 2 or n < 2:
        raise ProfileError("need r >= 2 and n >= 2")
    if exact(c) <= 0:
        raise ProfileError("c must be positive")
    with mp.workdps(DPS):
        cr = hp(c) ** r
        s_real = cr * mpmath.log(n)
        if s_real < 1:
            raise ProfileError(f"c^r ln n = {mpmath.nstr(s_real, 8)} < 1")
        s = int(mpmath.floor(s_real))
        t = int(mpmath.ceil(mpmath.mpf(n) ** (1 - hp(c) ** (r - 1))))
    return SizeProfile(r - 1, s, t)


def theorem1_profile(n: int, r: int, c: Number) -> SizeProfile:
    """``r`` classes of ``floor(c ln n)`` plus one of ``ceil(n**(1 - sqrt c))``."""
    if exact(c) <= 0 or n < 2:
        raise ProfileError("need c > 0 and n >= 2")
    with mp.workdps(DPS):
        s = int(mpmath.floor(hp(c) * mpmath.log(n)))
        t = int(mpmath.ceil(mpmath.mpf(n) ** (1 - mpmath.sqrt(hp(c)))))
    if s < 1:
        raise ProfileError("floor(c ln n) = 0: parameters too small for a witness")
    return SizeProfile(r, s, t)


def _common(g: Graph, vertices: Iterable[int], pool: int) -> int:
    for v in vertices:
        pool &= g.adj[v]
    return pool


def find_multipartite_exact(
    g: Graph, profile: SizeProfile, budget: Optional[int] = None
) -> Optional[MultipartiteWitness]:
    """First witness in canonical order, or ``None`` if none exists.

    Classes are filled in profile order with vertices in ascending id. The
    equal ``s``-classes are interchangeable, so their least elements are
    forced to increase. A branch is cut as soon as the common neighbourhood
    of the chosen vertices cannot host the remaining classes. The ``t``-class
    is taken last as the ``t`` least vertices of the final common
    neighbourhood. Worst case is exponential; ``budget`` caps the number of
    search nodes and raises :class:`SearchBudgetExceeded` when hit.
    """
    sizes = profile.sizes
    if profile.total > g.n:
        return None
    n_small = profile.r_small
    s = profile.s
    t = profile.t
    adj = g.adj
    nodes = 0
    chosen: list[list[int]] = []

    def fill(cls: int, current: list[int], pool: int, cand: int) -> bool:
        # pool: vertices adjacent to every vertex in finished classes.
        # cand: vertices of pool still eligible for the current class.
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise SearchBudgetExceeded(budget)
        if cls == n_small:
            if pool.bit_count() >= t:
                chosen.append(list(iter_bits(pool))[:t])
                return True
            return False
        later = sum(sizes[cls + 1 :])
        if len(current) == s:
            nxt = _common(g, current, pool)
            chosen.append(current)
            # every vertex of the next equal-size class must exceed this class's least
            first = current[0]
            if fill(cls + 1, [], nxt, nxt & ~((2 << first) - 1)):
                return True
            chosen.pop()
            return False
        need = s - len(current)
        common_cur = _common(g, current, pool)
        rest = cand
        while rest.bit_count() >= need:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            if (common_cur & adj[v]).bit_count() < later:
                continue
            if fill(cls, current + [v], pool, rest):
                return True
        return False

    if fill(0, [], g.vertex_mask, g.vertex_mask):
        return MultipartiteWitness.of(chosen)
    return None


def find_multipartite_greedy(
    g: Graph, profile: SizeProfile, starts: int = 8
) -> Optional[MultipartiteWitness]:
    """One-sided fast path: ``None`` is not a refutation.

    Each class grows one vertex at a time, always adding the vertex that
    keeps the largest common neighbourhood inside the current pool; the pool
    then shrinks to that neighbourhood. Up to ``starts`` seeds for the first
    vertex are tried in order of decreasing degree.
    """
    if profile.total > g.n:
        return None
    adj = g.adj
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for first in order[:starts]:
        pool = g.vertex_mask
        parts: list[list[int]] = []
        ok = True
        for cls in range(profile.r_small):
            cls_vertices: list[int] = []
            common = pool
            cand = pool
            for _ in range(profile.s):
                if cls == 0 and not cls_vertices:
                    pick = first if cand >> first & 1 else None
                else:
                    pick = max(
                        iter_bits(cand),
                        key=lambda v: ((common & adj[v]).bit_count(), -v),
                        default=None,
                    )
                if pick is None:
                    ok = False
                    break
                cls_vertices.append(pick)
                cand &= ~(1 << pick)
                common &= adj[pick]
            if not ok:
                break
            parts.append(cls_vertices)
            pool = common
        if not ok or pool.bit_count() < profile.t:
            continue
        parts.append(list(iter_bits(pool))[: profile.t])
        witness = MultipartiteWitness.of(parts)
        if verify_witness(g, witness, profile):
            return witness
    return None


def verify_witness(g: Graph, w: MultipartiteWitness, profile: Optional[SizeProfile]) -> Verdict:
    """Check disjointness, cross-completeness and (if given) the size profile."""
    parts: Sequence[Sequence[int]] = w.parts
    seen: set[int] = set()
    for p in parts:
        for v in p:
            if not 0 <= v < g.n:
                return Verdict(False, f"vertex {v} out of range")
            if v in seen:
                return Verdict(False, "not disjoint")
            seen.add(v)
    if profile is not None and tuple(len(p) for p in parts) != profile.sizes:
        return Verdict(False, "size mismatch")
    for i, p in enumerate(parts):
        for q in parts[i + 1 :]:
            for a in p:
                for b in q:
                    if not g.has_edge(a, b):
                        return Verdict(False, f"missing cross edge {min(a, b)} {max(a, b)}")
    return Verdict(True)
