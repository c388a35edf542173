"""The stability dichotomy as a pipeline producing checkable certificates.

``analyze`` runs the clique-joint reduction, then either searches for a
complete ``(r+1)``-partite subgraph (many cliques destroyed) or builds an edit
set to ``T_r(n)`` from an induced ``r``-partite core of the reduced graph.
Every failure becomes an ``inconclusive`` certificate naming the stage.

Certificate JSON fields, in order: ``version``, ``params``, ``hypothesis``,
``outcome``, ``payload``, ``trace_summary``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Any, Mapping, Optional, Union

import mpmath
from mpmath import mp

from ._numeric import DPS, Number, exact, fmt, hp
from .graph import Graph, turan_part_sizes
from .multipartite import (
    ProfileError,
    SearchBudgetExceeded,
    SizeProfile,
    Verdict,
    find_multipartite_exact,
    find_multipartite_greedy,
    theorem1_profile,
)
from .reducer import paper_threshold, run_procedure, theta
from .turan import (
    TrimError,
    edit_distance_exact,
    edits_from_partition,
    extend_partition,
    extract_partite_core,
    normalize,
    refine_partition,
    theorem_bound,
    trim_target,
    trim_to_size,
)

__all__ = [
    "CERT_VERSION",
    "Certificate",
    "HypothesisCheck",
    "ParameterError",
    "Params",
    "analyze",
    "check_hypothesis",
    "paper_range_violation",
    "verify_certificate",
]

CERT_VERSION = 1
EXACT_EDIT_LIMIT = 12
HYPOTHESIS_NOTE = "edge-count hypothesis is evaluated with eps as the slack"


class ParameterError(ValueError):
    """Parameters outside the admissible range of the selected mode."""


def paper_range_violation(r: int, eps: Number, c: Number, ln_n: Number) -> Optional[str]:
    """First violated inequality of ``1/ln n < c < r^(-3(r+14)(r+1))``,
    ``0 < eps < r^-24``, or ``None``. Takes ``ln n`` because admissible
    ``n`` exceed ``exp(2^144)``."""
    e, cq = exact(eps), exact(c)
    if not e > 0:
        return "0 < eps"
    if not e < Fraction(1, r**24):
        return "eps < r^-24"
    if not cq < Fraction(1, r ** (3 * (r + 14) * (r + 1))):
        return "c < r^(-3(r+14)(r+1))"
    with mp.workdps(DPS):
        if not hp(cq) * hp(ln_n) > 1:
            return "1/ln n < c"
    return None


@dataclass(frozen=True)
class Params:
    """Analysis parameters.

    ``mode="paper"`` enforces ``1/ln n < c < r^(-3(r+14)(r+1))`` and
    ``0 < eps < r^-24`` and forbids overrides. ``mode="relaxed"`` accepts any
    ``eps, c >= 0`` and the overrides below, all of which are stamped into the
    certificate:

    threshold      joint-size threshold of the reduction loop
    clique_target  branch to the witness search when the trace sum exceeds it
    profile        class sizes of the sought multipartite witness
    trim           per-part size the core is trimmed to
    bound          coefficient ``B`` of the claimed bound ``B * n^2``
    """

    r: int
    eps: Fraction
    c: Fraction
    mode: str = "relaxed"
    threshold: Optional[Fraction] = None
    clique_target: Optional[Fraction] = None
    profile: Optional[SizeProfile] = None
    trim: Optional[int] = None
    bound: Optional[Fraction] = None
    budget: int = 200_000

    @classmethod
    def make(cls, r: int, eps: Number, c: Number, mode: str = "relaxed", **overrides: Any) -> Params:
        for key in ("threshold", "clique_target", "bound"):
            if overrides.get(key) is not None:
                overrides[key] = exact(overrides[key])
        return cls(r, exact(eps), exact(c), mode, **overrides)

    def overrides(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        if self.threshold is not None:
            out["threshold"] = str(self.threshold)
        if self.clique_target is not None:
            out["clique_target"] = str(self.clique_target)
        if self.profile is not None:
            out["profile"] = list(self.profile.sizes)
        if self.trim is not None:
            out["trim"] = self.trim
        if self.bound is not None:
            out["bound"] = str(self.bound)
        return out

    def validate(self, n: int) -> None:
        """Raise :class:`ParameterError` naming the first violated inequality."""
        r = self.r
        if r < 2:
            raise ParameterError("r >= 2 violated")
        if self.mode not in ("paper", "relaxed"):
            raise ParameterError(f"unknown mode {self.mode!r}")
        if self.budget < 1:
            raise ParameterError("budget >= 1 violated")
        if self.mode == "relaxed":
            if self.eps < 0:
                raise ParameterError("eps >= 0 violated")
            if self.c < 0:
                raise ParameterError("c >= 0 violated")
            if self.threshold is not None and self.threshold < 0:
                raise ParameterError("threshold >= 0 violated")
            return
        if self.overrides():
            raise ParameterError("overrides are only accepted in relaxed mode")
        if n < 2:
            raise ParameterError("1/ln n < c violated")
        with mp.workdps(DPS):
            violated = paper_range_violation(r, self.eps, self.c, mpmath.log(n))
        if violated:
            raise ParameterError(f"{violated} violated")

    def to_dict(self) -> dict[str, Any]:
        return {
            "r": self.r,
            "eps": str(self.eps),
            "c": str(self.c),
            "mode": self.mode,
            "budget": self.budget,
            "overrides": self.overrides(),
            "note": HYPOTHESIS_NOTE,
        }


@dataclass(frozen=True)
class HypothesisCheck:
    holds: bool
    n: int
    edges: int
    required: int

    @property
    def margin(self) -> int:
        return self.edges - self.required

    def to_dict(self) -> dict[str, Any]:
        return {
            "holds": self.holds,
            "n": self.n,
            "edges": self.edges,
            "required": self.required,
            "margin": self.margin,
        }


def check_hypothesis(g: Graph, r: int, eps: Number) -> HypothesisCheck:
    """``e(G) >= ceil((1 - 1/r - eps) n^2 / 2)``, evaluated exactly."""
    required = ceil((1 - Fraction(1, r) - exact(eps)) * g.n * g.n / 2)
    return HypothesisCheck(g.num_edges >= required, g.n, g.num_edges, required)


@dataclass
class Certificate:
    outcome: str  # "multipartite" | "turan_edit" | "inconclusive"
    params: dict[str, Any]
    hypothesis: Optional[dict[str, Any]] = None
    payload: dict[str, Any] = field(default_factory=dict)
    trace_summary: Optional[dict[str, Any]] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": CERT_VERSION,
            "params": self.params,
            "hypothesis": self.hypothesis,
            "outcome": self.outcome,
            "payload": self.payload,
            "trace_summary": self.trace_summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Certificate:
        return cls(
            outcome=data["outcome"],
            params=dict(data["params"]),
            hypothesis=data.get("hypothesis"),
            payload=dict(data.get("payload") or {}),
            trace_summary=data.get("trace_summary"),
        )

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        return cls.from_dict(json.loads(text))


def _inconclusive(params: Params, stage: str, reason: str, hyp=None, trace=None, **diag) -> Certificate:
    return Certificate(
        "inconclusive",
        params.to_dict(),
        hyp,
        {"stage": stage, "reason": reason, "diagnostics": diag},
        trace,
    )


def _edges_json(edges) -> list[list[int]]:
    return [[u, v] for u, v in edges]


def analyze(g: Graph, params: Params) -> Certificate:
    """Run the dichotomy pipeline on ``g``; never raises for analysis failures."""
    n, r = g.n, params.r
    try:
        params.validate(n)
    except ParameterError as exc:
        return _inconclusive(params, "parameters", "parameters rejected", violated=str(exc))

    hyp = check_hypothesis(g, r, params.eps)
    hyp_d = hyp.to_dict()
    if not hyp.holds:
        return _inconclusive(params, "hypothesis", "hypothesis violated", hyp_d)

    threshold = params.threshold if params.threshold is not None else paper_threshold(n, r)
    reduced, trace = run_procedure(g, r, threshold)

    with mp.workdps(DPS):
        removal_target = int(mpmath.ceil(theta(params.c, r) * n * n))
        if params.mode == "paper":
            clique_target = None
            take_witness = len(trace) >= removal_target
        else:
            if params.clique_target is not None:
                clique_target = hp(params.clique_target)
            else:
                clique_target = hp(threshold) * removal_target
            take_witness = trace.total > clique_target
    summary = {
        "threshold": str(trace.threshold_used),
        "length": len(trace),
        "sum": trace.total,
        "removal_target": removal_target,
        "clique_target": None if clique_target is None else fmt(clique_target),
        "branch": "a" if take_witness else "b",
    }

    if take_witness:
        cert = _witness_branch(g, params, hyp_d, summary)
    else:
        cert = _edit_branch(g, reduced, params, hyp_d, summary)
    if cert.outcome != "inconclusive":
        verdict = verify_certificate(g, cert)
        if not verdict:
            return _inconclusive(params, "self-check", verdict.reason, hyp_d, summary)
    return cert


def _witness_branch(g: Graph, params: Params, hyp_d, summary) -> Certificate:
    try:
        profile = params.profile or theorem1_profile(g.n, params.r, params.c)
    except ProfileError as exc:
        return _inconclusive(params, "profile", str(exc), hyp_d, summary)
    if profile.total > g.n:
        return _inconclusive(params, "profile", "profile larger than the graph", hyp_d, summary,
                             profile=list(profile.sizes))
    method = "exact"
    try:
        witness = find_multipartite_exact(g, profile, budget=params.budget)
        if witness is None:
            return _inconclusive(params, "witness", "no witness exists for profile", hyp_d, summary,
                                 profile=list(profile.sizes))
    except SearchBudgetExceeded:
        method = "greedy"
        witness = find_multipartite_greedy(g, profile)
        if witness is None:
            return _inconclusive(params, "witness", "search budget exhausted", hyp_d, summary,
                                 profile=list(profile.sizes), budget=params.budget)
    payload = {
        "profile": {"r_small": profile.r_small, "s": profile.s, "t": profile.t},
        "parts": [list(p) for p in witness.parts],
        "method": method,
    }
    return Certificate("multipartite", params.to_dict(), hyp_d, payload, summary)


def _edit_branch(g: Graph, reduced: Graph, params: Params, hyp_d, summary) -> Certificate:
    n, r = g.n, params.r
    core = extract_partite_core(reduced, r)
    target = params.trim if params.trim is not None else trim_target(n, r, params.eps, params.c)
    core_d = {"order": core.order, "min_degree": core.min_degree, "trim_target": target}
    try:
        trimmed = trim_to_size(core, reduced, target)
    except TrimError as exc:
        return _inconclusive(params, "trim", str(exc), hyp_d, summary, core=core_d)

    partition = extend_partition(g, trimmed.parts, r)
    edit = refine_partition(g, partition)
    method = "core+swap"
    if n <= EXACT_EDIT_LIMIT:
        exact_edit = edit_distance_exact(g, r)
        if exact_edit.count < edit.count:
            edit, method = exact_edit, "exact"
    edit = edits_from_partition(g, normalize(edit.partition))

    with mp.workdps(DPS):
        if params.bound is not None:
            bound = hp(params.bound) * n * n
        else:
            bound = theorem_bound(n, r, params.eps, params.c)
        bound_s = fmt(bound)
    if not edit.count < Fraction(bound_s):
        return _inconclusive(params, "bound", "edit count not below bound", hyp_d, summary,
                             count=edit.count, bound=bound_s, core=core_d)
    payload = {
        "partition": [list(p) for p in edit.partition],
        "adds": _edges_json(edit.adds),
        "removes": _edges_json(edit.removes),
        "count": edit.count,
        "bound": bound_s,
        "method": method,
        "core": core_d,
    }
    return Certificate("turan_edit", params.to_dict(), hyp_d, payload, summary)


def verify_certificate(g: Graph, cert: Union[Certificate, Mapping[str, Any]]) -> Verdict:
    """Re-check a certificate against ``g`` from its serialized form alone."""
    data = cert.to_dict() if isinstance(cert, Certificate) else cert
    try:
        return _verify(g, data)
    except (KeyError, TypeError, ValueError) as exc:
        return Verdict(False, f"malformed certificate: {exc}")


def _verify(g: Graph, data: Mapping[str, Any]) -> Verdict:
    outcome = data["outcome"]
    payload = data["payload"]
    if outcome == "inconclusive":
        return Verdict(True, "inconclusive: not a claim")
    hyp = data["hypothesis"]
    if hyp["n"] != g.n or hyp["edges"] != g.num_edges:
        return Verdict(False, "certificate was issued for a different graph")

    if outcome == "multipartite":
        prof = payload["profile"]
        sizes = [prof["s"]] * prof["r_small"] + [prof["t"]]
        parts = payload["parts"]
        if [len(p) for p in parts] != sizes:
            return Verdict(False, "size mismatch")
        flat = [v for p in parts for v in p]
        if len(set(flat)) != len(flat):
            return Verdict(False, "not disjoint")
        if any(not (isinstance(v, int) and 0 <= v < g.n) for v in flat):
            return Verdict(False, "vertex out of range")
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                for a in parts[i]:
                    for b in parts[j]:
                        if not g.has_edge(a, b):
                            return Verdict(False, f"missing cross edge {min(a, b)} {max(a, b)}")
        return Verdict(True)

    if outcome == "turan_edit":
        r = data["params"]["r"]
        parts = payload["partition"]
        if len(parts) != r:
            return Verdict(False, "partition has wrong number of parts")
        part_of = {}
        for i, p in enumerate(parts):
            for v in p:
                if v in part_of:
                    return Verdict(False, "partition not disjoint")
                part_of[v] = i
        if sorted(part_of) != list(range(g.n)):
            return Verdict(False, "partition does not cover the vertex set")
        if sorted(map(len, parts), reverse=True) != turan_part_sizes(g.n, r):
            return Verdict(False, "part sizes differ from the Turan profile")
        adds = {tuple(sorted(e)) for e in payload["adds"]}
        removes = {tuple(sorted(e)) for e in payload["removes"]}
        if len(adds) != len(payload["adds"]) or len(removes) != len(payload["removes"]):
            return Verdict(False, "duplicate edits")
        if any(not 0 <= a < b < g.n for a, b in adds | removes):
            return Verdict(False, "edit pair out of range")
        for u in range(g.n):
            for v in range(u + 1, g.n):
                cross = part_of[u] != part_of[v]
                present = g.has_edge(u, v)
                if (u, v) in adds and (present or not cross):
                    return Verdict(False, f"invalid add {u} {v}")
                if (u, v) in removes and (not present or cross):
                    return Verdict(False, f"invalid remove {u} {v}")
                final = (present or (u, v) in adds) and (u, v) not in removes
                if final != cross:
                    return Verdict(False, f"pair {u} {v} wrong after edits")
        count = payload["count"]
        if count != len(adds) + len(removes):
            return Verdict(False, "count does not match the edit set")
        if not count < Fraction(payload["bound"]):
            return Verdict(False, "count not below bound")
        return Verdict(True)

    return Verdict(False, f"unknown outcome {outcome!r}")
