"""Exit criteria. Each test checks one criterion at its pinned tolerance and
reports a pass/fail line in the terminal summary."""

from __future__ import annotations

import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import comb

import mpmath
from mpmath import mp

from turanstab import oracles
from turanstab._numeric import DPS
from turanstab.certificate import Params, analyze, verify_certificate
from turanstab.cliques import cliques_on_edge, count_cliques, joint_size
from turanstab.graph import Graph, apply_edits, planted_turan, random_graph, turan_graph
from turanstab.multipartite import (
    SizeProfile,
    fact2_parameters,
    find_multipartite_exact,
    find_multipartite_greedy,
    verify_witness,
)
from turanstab.reducer import run_procedure, theta
from turanstab.turan import (
    edit_distance_exact,
    edit_distance_heuristic,
    proof_chain,
    theorem_bound,
)

from .acceptance_report import criterion

EXACT_TOL = mpmath.mpf(10) ** -40


def clique_corpus() -> list[Graph]:
    rng = random.Random(20240601)
    corpus = []
    for seed in range(200):
        n = rng.randint(0, 10)
        m = rng.randint(0, comb(n, 2))
        corpus.append(random_graph(n, m, seed))
    return corpus


def stable_params(n: int) -> Params:
    if n <= 12:
        return Params.make(3, "0.2", "1e-30", clique_target=10**6, trim=n // 3 - 1)
    return Params.make(3, "0.05", "1e-30", clique_target=10**6, trim=7)


def witness_fixture() -> tuple[Graph, Params]:
    g = random_graph(24, 262, 5)
    p = Params.make(2, "0.05", "1e-30", threshold=0, clique_target=100, profile=SizeProfile(2, 2, 2))
    return g, p


def e2e_fixtures() -> list[tuple[Graph, Params]]:
    out = []
    for n in (9, 12, 30):
        for k in range(1, 11):
            g = planted_turan(n, 3, k, 1000 * n + k)
            out.append((g, stable_params(n)))
    out.append(witness_fixture())
    return out


def test_1_clique_oracle_equivalence():
    with criterion(1, "clique counts, per-edge counts and joint size match subset enumeration"):
        start = time.perf_counter()
        for g in clique_corpus():
            for r in (2, 3, 4):
                assert count_cliques(g, r) == oracles.count_cliques(g, r)
                for u, v in g.edges():
                    assert cliques_on_edge(g, (u, v), r) == oracles.cliques_on_edge(g, u, v, r)
                js = joint_size(g, r)
                assert (js.size, js.witness_edge) == oracles.joint_size(g, r)
        assert time.perf_counter() - start < 10


def test_2_handshake_identity():
    with criterion(2, "sum of per-edge r-clique counts equals C(r,2) k_r"):
        for g in clique_corpus():
            for r in (2, 3, 4):
                total = sum(cliques_on_edge(g, e, r) for e in g.edges())
                assert total == comb(r, 2) * count_cliques(g, r)


def test_3_procedure_contract():
    with criterion(3, "reduction loop: joint size <= threshold, trace sum <= k_(r+1), replay exact"):
        rng = random.Random(77)
        for seed in range(100):
            n = rng.randint(0, 25)
            g = random_graph(n, rng.randint(0, comb(n, 2)), seed)
            r = rng.choice((2, 3))
            threshold = rng.choice((0, 1, 2))
            out, trace = run_procedure(g, r, threshold)
            assert joint_size(out, r + 1).size <= threshold
            assert trace.total <= count_cliques(g, r + 1)
            assert apply_edits(g, [], trace.edges).adj == out.adj
        _, trace = run_procedure(Graph.complete(4), 2, 0)
        assert trace.total == 4


def test_4_multipartite_finder():
    with criterion(4, "exact finder agrees with disjoint-assignment oracle; greedy sound; C5 has no K(1,1,1)"):
        rng = random.Random(4242)
        for seed in range(50):
            n = rng.randint(3, 12)
            g = random_graph(n, rng.randint(comb(n, 2) // 3, comb(n, 2)), seed)
            while True:
                profile = SizeProfile(rng.randint(1, 3), rng.randint(1, 2), rng.randint(1, 3))
                if profile.total <= 8:
                    break
            found = find_multipartite_exact(g, profile)
            expected = oracles.find_multipartite(g, profile.sizes)
            assert (found is None) == (expected is None)
            if found is not None:
                assert verify_witness(g, found, profile)
            greedy = find_multipartite_greedy(g, profile)
            if greedy is not None:
                assert verify_witness(g, greedy, profile)
        c5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        assert find_multipartite_exact(c5, SizeProfile(2, 1, 1)) is None


def test_5_edit_distance():
    with criterion(5, "exact edit distance equals enumeration oracle; heuristic >= exact; zero on T_r(n); K4 -> 2"):
        rng = random.Random(555)
        for seed in range(50):
            n = rng.randint(1, 8)
            g = random_graph(n, rng.randint(0, comb(n, 2)), seed)
            r = rng.choice((2, 3, 4))
            exact = edit_distance_exact(g, r)
            assert exact.count == oracles.edit_distance(g, r)[0]
            assert edit_distance_heuristic(g, r).count >= exact.count
        for n in range(11):
            for r in (2, 3, 4):
                assert edit_distance_exact(turan_graph(n, r), r).count == 0
        assert edit_distance_exact(Graph.complete(4), 2).count == 2


def test_6_end_to_end_dichotomy():
    with criterion(6, "planted stability and planted witness yield verified certificates"):
        start = time.perf_counter()
        for n in (9, 12, 30):
            for k in range(1, 11):
                g = planted_turan(n, 3, k, 1000 * n + k)
                cert = analyze(g, stable_params(n))
                assert cert.outcome == "turan_edit", cert.payload
                if n <= 12:
                    assert cert.payload["count"] == oracles.edit_distance(g, 3)[0]
                else:
                    assert cert.payload["count"] <= 2 * k
                assert verify_certificate(g, cert)
        g, p = witness_fixture()
        assert oracles.find_multipartite(g, [2, 2, 2]) is not None
        cert = analyze(g, p)
        assert cert.outcome == "multipartite"
        assert verify_certificate(g, cert)
        assert time.perf_counter() - start < 60


def _sample_below(rng: random.Random, limit: Fraction) -> Fraction:
    """Value in (0, limit): half uniform, half log-uniform over 60 decades."""
    if rng.random() < 0.5:
        u = Fraction(rng.randint(1, 10**12 - 1), 10**12)
    else:
        u = Fraction(1, 10 ** rng.randint(0, 59)) * Fraction(rng.randint(1, 999), 1000)
    return limit * u


def test_7_proof_arithmetic_chain():
    with criterion(7, "eps+theta < r^-8/8 and final edit bound < eps^(1/3)+c^(1/(3r+3)) on 1000 samples"):
        rng = random.Random(7)
        for _ in range(1000):
            r = rng.choice((2, 3))
            eps = _sample_below(rng, Fraction(1, r**24))
            c = _sample_below(rng, Fraction(1, r ** (3 * (r + 14) * (r + 1))))
            chain = proof_chain(r, eps, c)
            assert chain.slack_margin > 0
            assert chain.bound_margin > 0
        with mp.workdps(DPS):
            assert theta(1, 2) == 256
            assert abs(theorem_bound(10, 3, Fraction(1, 10**6), Fraction(1, 10**12)) - 11) < EXACT_TOL
        assert fact2_parameters(21, 2, 1) == SizeProfile(1, 3, 1)


def test_8_determinism():
    with criterion(8, "repeated analyze runs give byte-identical certificate JSON"):
        fixtures = e2e_fixtures()
        for g, p in fixtures:
            assert analyze(g, p).to_json() == analyze(g, p).to_json()
        # and across interpreter processes with different hash seeds
        g, p = fixtures[-2]
        script = (
            "from turanstab.graph import planted_turan; "
            "from turanstab.certificate import Params, analyze; "
            "p = Params.make(3, '0.05', '1e-30', clique_target=10**6, trim=7); "
            "import sys; sys.stdout.write(analyze(planted_turan(30, 3, 10, 30010), p).to_json())"
        )
        for hash_seed in ("0", "12345"):
            env = {**os.environ, "PYTHONHASHSEED": hash_seed}
            res = subprocess.run([sys.executable, "-c", script], capture_output=True, text=True, env=env)
            assert res.returncode == 0, res.stderr
            assert res.stdout == analyze(g, p).to_json()
