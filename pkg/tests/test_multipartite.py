import pytest
from hypothesis import given
from hypothesis import strategies as st

from turanstab import oracles
from turanstab.graph import Graph, apply_edits, complete_multipartite, random_graph, turan_graph
from turanstab.multipartite import (
    MultipartiteWitness,
    ProfileError,
    SearchBudgetExceeded,
    SizeProfile,
    fact2_parameters,
    find_multipartite_exact,
    find_multipartite_greedy,
    theorem1_profile,
    verify_witness,
)

from .strategies import graphs

profiles = st.builds(
    SizeProfile, st.integers(1, 3), st.integers(1, 2), st.integers(1, 3)
).filter(lambda p: p.total <= 8)


def test_fact2_parameters():
    assert fact2_parameters(21, 2, 1) == SizeProfile(1, 3, 1)
    assert fact2_parameters(55, 2, 1) == SizeProfile(1, 4, 1)
    with pytest.raises(ProfileError):
        fact2_parameters(100, 2, 0.1)  # 0.01 * ln 100 < 1


def test_theorem1_profile():
    assert theorem1_profile(22027, 2, 0.25) == SizeProfile(2, 2, 149)
    assert theorem1_profile(100, 2, 1) == SizeProfile(2, 4, 1)
    with pytest.raises(ProfileError):
        theorem1_profile(100, 2, 0.2)  # 0.2 * ln 100 = 0.92


def test_profile_parse():
    assert SizeProfile.parse("2,2,5") == SizeProfile(2, 2, 5)
    with pytest.raises(ProfileError):
        SizeProfile.parse("2,3,5")


def test_octahedron():
    oct_ = complete_multipartite([2, 2, 2])
    w = find_multipartite_exact(oct_, SizeProfile(2, 2, 2))
    assert w == MultipartiteWitness(((0, 1), (2, 3), (4, 5)))
    assert verify_witness(oct_, w, SizeProfile(2, 2, 2))


def test_c5_has_no_triangle(c5):
    assert find_multipartite_exact(c5, SizeProfile(2, 1, 1)) is None
    assert find_multipartite_greedy(c5, SizeProfile(2, 1, 1)) is None


def test_dense_fixture_matches_oracle():
    g = random_graph(20, 170, 11)
    found = find_multipartite_exact(g, SizeProfile(2, 2, 2))
    assert (found is not None) == (oracles.find_multipartite(g, [2, 2, 2]) is not None)
    if found:
        assert verify_witness(g, found, SizeProfile(2, 2, 2))


def test_greedy_examples():
    w = find_multipartite_greedy(Graph.complete(10), SizeProfile(2, 2, 2))
    assert w is not None and verify_witness(Graph.complete(10), w, SizeProfile(2, 2, 2))
    assert find_multipartite_greedy(Graph.empty(10), SizeProfile(1, 2, 2)) is None
    t = turan_graph(30, 3)
    w = find_multipartite_greedy(t, SizeProfile(2, 3, 3))
    assert w is not None and verify_witness(t, w, SizeProfile(2, 3, 3))
    assert sorted({v % 3 for v in p} for p in w.parts) == [{0}, {1}, {2}]


def test_verify_reasons():
    oct_ = complete_multipartite([2, 2, 2])
    prof = SizeProfile(2, 2, 2)
    moved = MultipartiteWitness(((0, 2), (1, 3), (4, 5)))
    assert not verify_witness(oct_, moved, prof)
    uneven = MultipartiteWitness(((0,), (1, 2, 3), (4, 5)))
    assert verify_witness(oct_, uneven, prof).reason == "size mismatch"
    overlap = MultipartiteWitness(((0, 1), (1, 3), (4, 5)))
    assert verify_witness(oct_, overlap, prof).reason == "not disjoint"


def test_budget_is_distinct_outcome():
    g = random_graph(30, 300, 2)
    with pytest.raises(SearchBudgetExceeded):
        find_multipartite_exact(g, SizeProfile(3, 3, 6), budget=5)


@given(graphs(max_n=12), profiles)
def test_exact_matches_oracle_and_greedy_is_sound(g, profile):
    w = find_multipartite_exact(g, profile)
    expected = oracles.find_multipartite(g, profile.sizes)
    assert (w is not None) == (expected is not None)
    if w is not None:
        assert verify_witness(g, w, profile)
    gw = find_multipartite_greedy(g, profile)
    if gw is not None:
        assert verify_witness(g, gw, profile)
        assert w is not None


@given(graphs(max_n=10), profiles, st.data())
def test_monotone_under_edge_addition(g, profile, data):
    if find_multipartite_exact(g, profile) is None:
        return
    non_edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    adds = data.draw(st.lists(st.sampled_from(non_edges), unique=True) if non_edges else st.just([]))
    assert find_multipartite_exact(apply_edits(g, adds, []), profile) is not None
