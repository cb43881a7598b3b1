"""Hypothesis strategies producing small valid connected graphs."""

from hypothesis import assume
from hypothesis import strategies as st

from qgraph.graphcore import BLACK, WHITE, DecoratedGraph, validate


@st.composite
def rooted_graphs(draw, max_vertices=5, max_legs=3, whites=True):
    """Random tree with one outgoing leg; vertex i > 0 feeds an earlier vertex."""
    n = draw(st.integers(1, max_vertices))
    colors = [draw(st.sampled_from([BLACK, WHITE])) if whites else BLACK for _ in range(n)]
    slots = [[] for _ in range(n)]
    for v in range(1, n):
        parent = draw(st.integers(0, v - 1))
        slots[parent].append(v)
    n_legs = draw(st.integers(0, max_legs))
    for label in range(1, n_legs + 1):
        slots[draw(st.integers(0, n - 1))].append(-label)
    for s in slots:
        order = draw(st.permutations(s))
        s[:] = order
    g = DecoratedGraph(tuple(colors), tuple(tuple(s) for s in slots), (0,))
    assume(validate(g))
    order = draw(st.permutations(range(n)))
    return g.reorder(list(order))


@st.composite
def cyclic_graphs(draw, max_vertices=5, max_legs=3, whites=True):
    """Random graph without outgoing leg: the root of a tree feeds back into it."""
    g = draw(rooted_graphs(max_vertices, max_legs, whites))
    root = g.out_legs[0]
    targets = [v for v in range(g.n_vertices)]
    v = draw(st.sampled_from(targets))
    slots = [list(s) for s in g.inputs]
    pos = draw(st.integers(0, len(slots[v])))
    slots[v].insert(pos, root)
    h = DecoratedGraph(g.colors, tuple(tuple(s) for s in slots), ())
    assume(validate(h))
    return h


def any_graphs(max_vertices=5, max_legs=3, whites=True):
    return st.one_of(rooted_graphs(max_vertices, max_legs, whites),
                     cyclic_graphs(max_vertices, max_legs, whites))
