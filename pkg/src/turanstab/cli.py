"""Command line interface: ``turanstab {gen,analyze,verify,oracle,sweep}``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from math import comb
from pathlib import Path
from typing import Optional, Sequence

from . import oracles
from .certificate import Certificate, Params, analyze, verify_certificate
from .graph import (
    GraphError,
    complete_multipartite,
    planted_turan,
    random_graph,
    read_edge_list,
    turan_graph,
    write_edge_list,
)
from .multipartite import SizeProfile
from .reducer import run_procedure


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _float_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _add_param_flags(p: argparse.ArgumentParser, eps: Optional[str] = None, c: Optional[str] = None) -> None:
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--eps", required=eps is None, default=eps, help="slack parameter (exact decimal or p/q)")
    p.add_argument("--c", required=c is None, default=c, help="density parameter (exact decimal or p/q)")
    p.add_argument("--mode", choices=("paper", "relaxed"), default="relaxed")
    p.add_argument("--threshold", help="relaxed: joint-size threshold")
    p.add_argument("--clique-target", help="relaxed: trace sum above which a witness is sought")
    p.add_argument("--profile", help="relaxed: witness class sizes s,...,s,t")
    p.add_argument("--trim", type=int, help="relaxed: per-part trim size")
    p.add_argument("--bound", help="relaxed: claimed bound coefficient B (bound = B n^2)")
    p.add_argument("--budget", type=int, default=200_000, help="exact witness search node budget")


def _params(args: argparse.Namespace) -> Params:
    return Params.make(
        args.r,
        args.eps,
        args.c,
        args.mode,
        threshold=args.threshold,
        clique_target=args.clique_target,
        profile=SizeProfile.parse(args.profile) if args.profile else None,
        trim=args.trim,
        bound=args.bound,
        budget=args.budget,
    )


def cmd_gen(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind == "turan":
        g = turan_graph(args.n, args.r)
    elif kind == "multipartite":
        if not args.sizes:
            raise GraphError("--sizes is required for kind=multipartite")
        g = complete_multipartite(_int_list(args.sizes))
    elif kind == "random":
        if args.m is None:
            raise GraphError("--m is required for kind=random")
        g = random_graph(args.n, args.m, args.seed)
    else:
        g = planted_turan(args.n, args.r, args.flips, args.seed)
    write_edge_list(g, args.out)
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    g = read_edge_list(args.graph)
    cert = analyze(g, _params(args))
    Path(args.out).write_text(cert.to_json())
    if args.trace:
        threshold = cert.trace_summary["threshold"] if cert.trace_summary else None
        if threshold is not None:
            _, trace = run_procedure(g, args.r, threshold)
            trace.write(args.trace)
    payload = cert.payload
    print(f"outcome: {cert.outcome}")
    if cert.outcome == "inconclusive":
        print(f"stage: {payload['stage']}  reason: {payload['reason']}")
        if payload["stage"] == "parameters":
            print(payload["diagnostics"]["violated"], file=sys.stderr)
            return 2
    elif cert.outcome == "turan_edit":
        print(f"edits: {payload['count']} < bound {payload['bound']}")
    else:
        print("classes: " + " | ".join(" ".join(map(str, p)) for p in payload["parts"]))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    g = read_edge_list(args.graph)
    cert = Certificate.from_json(Path(args.cert).read_text())
    verdict = verify_certificate(g, cert)
    print(("valid" if verdict else "INVALID") + f": {verdict.reason}")
    return 0 if verdict else 1


def cmd_oracle(args: argparse.Namespace) -> int:
    g = read_edge_list(args.graph)
    op = args.op
    if op == "kcliques":
        result = {"k": args.k, "count": oracles.count_cliques(g, args.k)}
    elif op == "js":
        size, witness = oracles.joint_size(g, args.k)
        result = {"k": args.k, "size": size, "witness_edge": witness}
    elif op == "editdist":
        count, assign = oracles.edit_distance(g, args.r)
        result = {"r": args.r, "count": count, "assignment": assign}
    else:
        sizes = _int_list(args.profile)
        parts = oracles.find_multipartite(g, sizes)
        result = {"profile": sizes, "found": parts is not None,
                  "parts": [list(p) for p in parts] if parts else None}
    print(json.dumps(result))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    columns = ["n", "m", "trace_len", "trace_sum", "outcome", "edit_count", "bound"]
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for n in _int_list(args.n_list):
            for density in _float_list(args.density_list):
                m = round(float(density) * comb(n, 2))
                g = random_graph(n, m, args.seed)
                cert = analyze(g, _params(args))
                ts = cert.trace_summary or {}
                p = cert.payload
                writer.writerow([
                    n, m, ts.get("length", ""), ts.get("sum", ""), cert.outcome,
                    p.get("count", ""), p.get("bound", ""),
                ])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="turanstab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("--kind", choices=("turan", "multipartite", "random", "planted"), required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--m", type=int)
    p.add_argument("--sizes")
    p.add_argument("--flips", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", help="emit a dichotomy certificate")
    p.add_argument("--graph", required=True)
    _add_param_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--trace", help="also write the removal log ('u v count' lines)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check a certificate; exit 0 iff valid")
    p.add_argument("--graph", required=True)
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force reference computations")
    p.add_argument("--graph", required=True)
    p.add_argument("--op", choices=("kcliques", "js", "editdist", "findkpartite"), required=True)
    p.add_argument("--k", type=int, default=3, help="clique order for kcliques/js")
    p.add_argument("--r", type=int, default=2, help="part count for editdist")
    p.add_argument("--profile", default="1,1,1", help="class sizes for findkpartite")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="analyze seeded random graphs over a grid")
    _add_param_flags(p, eps="0.05", c="1e-30")
    p.add_argument("--n-list", required=True)
    p.add_argument("--density-list", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
