from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from turanstab.cliques import count_cliques, joint_size
from turanstab.graph import Edge, Graph, apply_edits, random_graph, turan_graph
from turanstab.reducer import RemovalTrace, paper_threshold, run_procedure, theta

from .strategies import graphs


def naive_procedure(g, r, threshold):
    """Recompute the joint size from scratch after every deletion."""
    steps = []
    while True:
        rep = joint_size(g, r + 1)
        if rep.size <= threshold:
            return g, steps
        steps.append((rep.witness_edge, rep.size))
        g = apply_edits(g, [], [rep.witness_edge])


def test_paper_threshold_examples():
    assert paper_threshold(10, 2) == Fraction(10, 256)
    assert paper_threshold(100, 3) == Fraction(10000, 19683)
    assert paper_threshold(0, 2) == 0


def test_theta_examples():
    assert theta(1, 2) == 256
    assert theta(0, 3) == 0
    assert abs(theta(Fraction(1, 2**24), 2) - 1) < mpmath.mpf(10) ** -50
    with pytest.raises(ValueError):
        theta(-1, 2)


def test_k4_fixture():
    out, trace = run_procedure(Graph.complete(4), 2, 0)
    assert [c for _, c in trace.steps] == [2, 2]
    assert trace.steps[0][0] == Edge(0, 1)
    assert trace.total == 4 == count_cliques(Graph.complete(4), 3)
    assert count_cliques(out, 3) == 0
    assert out.num_edges == 4  # a 4-cycle remains


def test_guard_false_at_entry():
    g = random_graph(12, 40, 1)
    js = joint_size(g, 3).size
    out, trace = run_procedure(g, 2, js)
    assert out == g and len(trace) == 0


def test_turan_9_3_fixture():
    out, trace = run_procedure(turan_graph(9, 3), 2, 0)
    assert count_cliques(out, 3) == 0
    assert trace.total <= 27


@given(graphs(max_n=14), st.sampled_from([2, 3]), st.sampled_from([0, 1, 2]))
def test_procedure_contract(g, r, threshold):
    out, trace = run_procedure(g, r, threshold)
    assert joint_size(out, r + 1).size <= threshold
    assert all(c > threshold for _, c in trace.steps)
    assert trace.total <= count_cliques(g, r + 1)
    assert apply_edits(g, [], trace.edges) == out
    assert out.num_edges == g.num_edges - len(trace)


@given(graphs(max_n=12), st.sampled_from([2, 3]), st.sampled_from([0, 1, 3]))
def test_incremental_equals_recomputation(g, r, threshold):
    out, trace = run_procedure(g, r, threshold)
    ref_out, ref_steps = naive_procedure(g, r, threshold)
    assert list(trace.steps) == ref_steps
    assert out == ref_out


def test_trace_text_round_trip(tmp_path):
    _, trace = run_procedure(random_graph(10, 35, 4), 2, Fraction(1, 3))
    path = tmp_path / "trace.log"
    trace.write(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "# threshold 1/3"
    assert all(len(ln.split()) == 3 for ln in lines[1:])
    assert RemovalTrace.from_text(path.read_text()) == trace
