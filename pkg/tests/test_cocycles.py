from math import comb, factorial

import pytest

from qgraph.cochain import Cochain
from qgraph.cocycles import (
    BadPermutation,
    NoNonzeroArcs,
    NotCyclic,
    arcs,
    b_decorations,
    b_graph,
    c_decorations,
    c_graph,
    cycle_graph,
    op_A,
    op_B,
    op_C,
    pi,
    psi,
    psi_terms,
)
from qgraph.complex import coboundary
from qgraph.graphcore import BLACK, WHITE, DecoratedGraph


def test_pi_coefficient():
    for n in (1, 2, 3):
        (g, c), = pi(n).items()
        assert c == -comb(4 * n - 3, 2 * n - 1)
        assert g.colors == (WHITE,) * (2 * n - 1)


def test_psi_starts_with_the_black_loop():
    first = psi_terms(2)[0]
    (g, c), = first.items()
    assert g.colors == (BLACK,) * 5 and c == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_psi_census(n):
    terms = psi_terms(n)
    assert len(terms) == 2 * n - 1
    for m, t in enumerate(terms, 1):
        assert t
        for g in t.terms:
            whites = g.n_vertices - g.n_black
            assert whites == m - 1
            assert g.n_black == 4 * n - 1 - 2 * m
            assert g.degree == 4 * n - 3


@pytest.mark.parametrize("n", [1, 2, 3])
def test_coboundary_of_psi_is_pi(n):
    assert coboundary(psi(n)) == pi(n)


def test_arcs_of_a_mixed_cycle():
    g = cycle_graph([WHITE, BLACK, BLACK, WHITE, BLACK])
    assert sorted(len(a) for a in arcs(g)) == [1, 2]
    assert arcs(cycle_graph([BLACK] * 3)) == [[0, 1, 2]]


def test_operators_on_a_short_cycle():
    c = Cochain.from_graph(cycle_graph([BLACK] * 3))
    a = op_A(c)
    assert all(g.n_black == 2 for g in a.terms)
    b = op_B(a)
    assert b == a  # a single white leaves one arc
    assert all(g.n_black == 1 for g in op_C(b).terms)


def test_operator_errors():
    with pytest.raises(NotCyclic):
        op_B(cycle_graph([BLACK] * 3))
    with pytest.raises(NoNonzeroArcs):
        op_C(cycle_graph([WHITE] * 3))
    with pytest.raises(NotCyclic):
        op_A(DecoratedGraph((BLACK,), ((-1,),), (0,)))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_b_decorations(n):
    decs = b_decorations(n)
    assert len(decs) == factorial(n - 1)
    graphs = {b_graph(n, p).graph for p in decs}
    assert len(graphs) == factorial(n - 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_c_decorations(n):
    assert len(c_decorations(n)) == factorial(n - 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_b_graphs_are_cocycles(n):
    for p in b_decorations(n):
        g, s = b_graph(n, p)
        assert s in (1, -1)
        assert not coboundary(g)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_c_graphs_are_cocycles(n):
    for p in c_decorations(n):
        g, s = c_graph(n, p)
        assert not coboundary(g)


def test_c_graph_rotation_is_the_same_class():
    g1 = Cochain.from_graph(*c_graph(3, (1, 2, 3)))
    g2 = Cochain.from_graph(*c_graph(3, (2, 3, 1)))
    assert g1 == g2


def test_bad_permutations():
    with pytest.raises(BadPermutation):
        b_graph(3, (2, 2))
    with pytest.raises(BadPermutation):
        c_graph(2, (1, 3))
    with pytest.raises(BadPermutation):
        b_graph(1)
