from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgraph.cochain import Cochain
from qgraph.cocycles import b_graph, c_graph, pi
from qgraph.complex import coboundary
from qgraph.enumeration import enumerate_basis, sector_basis
from qgraph.graphcore import BLACK, G2, G3, WHITE, DecoratedGraph
from qgraph.homology import (
    BasisNotClosed,
    NotACocycle,
    RationalMatrix,
    betti,
    betti_record,
    in_relation_span,
    is_coboundary,
    quotient,
    rank,
    relation_matrix,
    relations_of,
    solve,
)
from oracles import dense_rank

entries = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def sparse_rows(draw, max_rows=6, max_cols=6):
    n_cols = draw(st.integers(1, max_cols))
    rows = draw(st.lists(
        st.dictionaries(st.integers(0, n_cols - 1), entries.filter(bool), max_size=n_cols),
        max_size=max_rows))
    return rows, n_cols


@settings(max_examples=200, deadline=None)
@given(sparse_rows())
def test_rank_matches_dense_oracle(data):
    rows, n = data
    assert rank(rows) == dense_rank(rows, n)


@settings(max_examples=150, deadline=None)
@given(sparse_rows(), st.data())
def test_solve_reconstructs_combinations(data, draw):
    rows, n = data
    coeffs = [draw.draw(entries) for _ in rows]
    target = {}
    for c, r in zip(coeffs, rows):
        for j, v in r.items():
            target[j] = target.get(j, 0) + c * v
    target = {j: v for j, v in target.items() if v}
    x = solve(rows, target)
    assert x is not None
    got = {}
    for i, c in x.items():
        for j, v in rows[i].items():
            got[j] = got.get(j, 0) + c * v
    assert {j: v for j, v in got.items() if v} == target


def test_solve_reports_unreachable_target():
    assert solve([{0: Fraction(1)}], {1: Fraction(1)}) is None


def test_matrix_rejects_foreign_graphs():
    g = DecoratedGraph((BLACK,), ((),), (0,))
    h = DecoratedGraph((BLACK,), ((-1,),), (0,))
    m = RationalMatrix([g])
    with pytest.raises(BasisNotClosed):
        m.append(Cochain.from_graph(h))


def test_single_trivalent_white_has_quotient_dimension_two():
    basis = enumerate_basis(3, 1, 0, (3,))
    assert len(basis) == 3
    m = relation_matrix(basis)
    assert m.rank() == 1
    assert quotient(basis).dim == 2


def test_cyclic_relation_vanishes_modulo_relations():
    g = DecoratedGraph((WHITE,), ((-1, -2, -3),), (0,))
    (rel,) = relations_of(g)
    assert len(rel) == 3
    assert in_relation_span(rel)
    assert not in_relation_span(Cochain.from_graph(g))


def test_betti_record_fields_are_consistent():
    rec = betti_record(G3, 3, 1, 2)
    assert rec.betti == rec.dim_space - rec.rank_in - rec.rank_out
    assert rec.to_json() == {"dim_space": 3, "rank_in": 1, "rank_out": 0, "betti": 2}


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 2), (4, 6)])
def test_trivalent_tree_cohomology(n, expected):
    assert betti(G3, n, 1, n - 1) == expected


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 2)])
def test_trivalent_loop_cohomology(n, expected):
    assert betti(G3, n, 0, n) == expected


def test_off_diagonal_g3_degrees_vanish():
    assert betti(G3, 3, 1, 3) == 0
    assert betti(G3, 2, 1, 2) == 0


@pytest.mark.parametrize("k", range(1, 7))
def test_bivalent_loop_sector_is_acyclic(k):
    assert betti(G2, 0, 0, k) == 0


def test_pi_is_the_coboundary_of_psi():
    cert = is_coboundary(pi(1))
    assert cert.is_coboundary
    assert coboundary(cert.primitive) == pi(1)
    assert cert.rank_with == cert.rank_without


def test_trivalent_cocycles_are_not_coboundaries():
    for g, s in (c_graph(2), b_graph(3)):
        cert = is_coboundary(Cochain.from_graph(g, s))
        assert not cert
        assert cert.rank_with == cert.rank_without + 1


def test_zero_is_a_coboundary():
    assert is_coboundary(Cochain()).is_coboundary


def test_non_cocycle_is_rejected():
    g = DecoratedGraph((BLACK,), ((-1,),), (0,))
    with pytest.raises(NotACocycle):
        is_coboundary(Cochain.from_graph(g))


def test_coboundary_of_a_graph_is_certified():
    for g in sector_basis(G3, 3, 1, 1):
        z = coboundary(g)
        if not z:
            continue
        cert = is_coboundary(z)
        assert cert.is_coboundary
        assert in_relation_span(coboundary(cert.primitive) - z)
