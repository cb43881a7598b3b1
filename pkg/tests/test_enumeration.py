import pytest

from qgraph.enumeration import (
    LimitExceeded,
    enumerate_basis,
    g4_basis,
    graphs_for_types,
    sector_basis,
    vertex_limit,
)
from qgraph.graphcore import BLACK, G2, G3, G4, WHITE, classify
from oracles import brute_force_graphs, in_subcomplex

B, W = BLACK, WHITE

TYPE_CASES = [
    ([(B, 2), (B, 2)], 3, 1),
    ([(B, 2), (B, 2)], 2, 0),
    ([(B, 1), (B, 1)], 0, 0),
    ([(B, 1), (B, 1), (B, 1)], 1, 1),
    ([(B, 3), (B, 0)], 2, 1),
    ([(B, 2), (B, 1), (B, 0)], 1, 1),
    ([(W, 3), (B, 0), (B, 0)], 1, 1),
    ([(W, 3), (B, 1), (B, 0)], 1, 0),
    ([(W, 1), (B, 1)], 0, 0),
    ([(W, 1), (B, 1)], 1, 1),
    ([(W, 4), (B, 0), (B, 0)], 1, 0),
    ([(B, 2), (B, 2), (B, 2)], 4, 1),
    ([(W, 3), (B, 2)], 3, 1),
]


@pytest.mark.parametrize("types,n_in,m_out", TYPE_CASES)
def test_shape_enumeration_matches_brute_force(types, n_in, m_out):
    assert graphs_for_types(types, n_in, m_out) == brute_force_graphs(types, n_in, m_out)


def test_g3_tree_counts_match_brute_force():
    # the comb and the cherry with all leg labellings
    assert len(sector_basis(G3, 3, 1, 2)) == 3
    assert len(sector_basis(G3, 4, 1, 3)) == 15
    oracle = in_subcomplex(brute_force_graphs([(B, 2)] * 3, 4, 1), G3)
    assert set(sector_basis(G3, 4, 1, 3)) == oracle


def test_sector_members_have_the_requested_grading():
    for g in sector_basis(G2, 1, 1, 4):
        assert classify(g) == G2
        assert g.grading == (4, 1, 1)
    for g in sector_basis(G3, 2, 0, 3):
        assert classify(g) == G3
        assert g.grading == (3, 2, 0)


def test_enumeration_is_sorted_and_deterministic():
    a = enumerate_basis(2, 1, 3)
    assert a == enumerate_basis(2, 1, 3)
    assert len(set(a)) == len(a)


def test_g4_basis_only_contains_g4():
    graphs = g4_basis(1, 1, 4)
    assert graphs
    assert all(classify(g) == G4 and g.n_vertices == 4 for g in graphs)


def test_limit_is_enforced(monkeypatch):
    with pytest.raises(LimitExceeded):
        enumerate_basis(0, 1, 5, limit=4)
    monkeypatch.setenv("QGRAPH_LIMIT", "3")
    assert vertex_limit() == 3
    with pytest.raises(LimitExceeded):
        enumerate_basis(0, 1, 4)


def test_no_graphs_with_two_outputs():
    assert enumerate_basis(1, 2, 2) == []
