"""Explicit cocycles: the loop series Pi and Psi, and the trivalent B/C series."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import comb

from .cochain import Cochain
from .graphcore import BLACK, WHITE, DecoratedGraph, canonical_form


class NotCyclic(ValueError):
    pass


class NoNonzeroArcs(ValueError):
    pass


class BadPermutation(ValueError):
    pass


def cycle_graph(colors):
    """Bivalent cycle in which vertex i feeds vertex i+1 (mod length)."""
    n = len(colors)
    inputs = tuple(((i - 1) % n,) for i in range(n))
    return DecoratedGraph(tuple(colors), inputs, ())


def _flow(g):
    """Vertices of a bivalent cycle in flow order starting from vertex 0."""
    if g.n_vertices == 0 or g.out_legs or any(len(s) != 1 for s in g.inputs):
        raise NotCyclic("expected a cycle of bivalent vertices")
    nxt = {}
    for v, (src,) in enumerate(g.inputs):
        if src < 0:
            raise NotCyclic("cyclic graphs have no legs")
        nxt[src] = v
    order = [0]
    while len(order) < g.n_vertices:
        v = nxt[order[-1]]
        if v == 0:
            raise NotCyclic("graph is not a single cycle")
        order.append(v)
    if nxt[order[-1]] != 0:
        raise NotCyclic("graph is not a single cycle")
    return order


def arcs(g):
    """Maximal runs of black vertices between whites, in flow order."""
    order = _flow(g)
    whites = [i for i, v in enumerate(order) if g.colors[v] == WHITE]
    if not whites:
        return [order]
    n = len(order)
    out = []
    for j, w in enumerate(whites):
        stop = whites[(j + 1) % len(whites)]
        run = []
        i = (w + 1) % n
        while i != stop:
            run.append(order[i])
            i = (i + 1) % n
        out.append(run)
    return out


def _blacks_after(g, v):
    # sign of moving black vertex v past the later black vertices
    return sum(1 for u in range(v + 1, g.n_vertices) if g.colors[u] == BLACK)


def _as_cochain(c):
    return Cochain.from_graph(c) if isinstance(c, DecoratedGraph) else c


def _recolor(g, v):
    colors = list(g.colors)
    colors[v] = WHITE
    return DecoratedGraph(tuple(colors), g.inputs, g.out_legs)


def _remove(g, v):
    (src,) = g.inputs[v]

    def tr(s):
        s = src if s == v else s
        return s - 1 if s > v else s

    colors = g.colors[:v] + g.colors[v + 1:]
    inputs = tuple((tr(s[0]),) for u, s in enumerate(g.inputs) if u != v)
    return DecoratedGraph(colors, inputs, ())


def op_A(c):
    """Recolour each black vertex white, signed by the blacks after it."""
    out = Cochain()
    for g, coeff in _as_cochain(c).terms.items():
        _flow(g)
        for v in range(g.n_vertices):
            if g.colors[v] == BLACK:
                out.add(_recolor(g, v), coeff * (-1) ** _blacks_after(g, v))
    return out


def op_B(c):
    """Divide each graph by its number of arcs of nonzero length."""
    out = Cochain()
    for g, coeff in _as_cochain(c).terms.items():
        if WHITE not in g.colors:
            raise NotCyclic("arc counting needs at least one white vertex")
        k = sum(1 for a in arcs(g) if a)
        if k == 0:
            raise NoNonzeroArcs("cycle has no black vertices")
        out.add(g, coeff * Fraction(1, k), canonical=True)
    return out


def op_C(c):
    """Remove the first black vertex of each nonempty arc."""
    out = Cochain()
    for g, coeff in _as_cochain(c).terms.items():
        nonempty = [a for a in arcs(g) if a]
        if not nonempty:
            raise NoNonzeroArcs("cycle has no black vertices")
        for a in nonempty:
            v = a[0]
            out.add(_remove(g, v), coeff * (-1) ** _blacks_after(g, v))
    return out


def pi(n):
    """Cycle of 2n-1 bivalent white vertices with coefficient -binom(4n-3, 2n-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    g = cycle_graph([WHITE] * (2 * n - 1))
    return Cochain.from_graph(g, -comb(4 * n - 3, 2 * n - 1))


def psi_terms(n):
    """[psi_1, ..., psi_{2n-1}] with psi_m = C B A psi_{m-1}."""
    if n < 1:
        raise ValueError("n must be positive")
    terms = [Cochain.from_graph(cycle_graph([BLACK] * (4 * n - 3)))]
    for _ in range(2, 2 * n):
        terms.append(op_C(op_B(op_A(terms[-1]))))
    return terms


def psi(n):
    out = Cochain()
    for t in psi_terms(n):
        out.iadd(t)
    return out


# --- trivalent series -------------------------------------------------------


def _check_perm(perm, labels):
    if sorted(perm) != sorted(labels):
        raise BadPermutation(f"{list(perm)} is not a permutation of {sorted(labels)}")


def _root_last(g):
    # rotate the numbering so vertex 0 goes to the end
    n = g.n_vertices
    return g.reorder(list(range(1, n)) + [0])


def b_graph(n, perm=None):
    """Comb of n-1 trivalent blacks carrying the legs perm and 1.

    Walking down from the root, the j-th vertex reads the next one (the
    deepest reads leg 1) and the leg perm[j].  Vertices are numbered in this
    walk starting below the root, with the root numbered last.
    """
    if n < 2:
        raise BadPermutation("B-series graphs need n >= 2")
    perm = tuple(range(2, n + 1)) if perm is None else tuple(perm)
    _check_perm(perm, range(2, n + 1))
    inputs = [(i + 1 if i < n - 2 else -1, -perm[i]) for i in range(n - 1)]
    g = DecoratedGraph((BLACK,) * (n - 1), tuple(inputs), (0,))
    return canonical_form(_root_last(g))


def c_graph(n, perm=None):
    """Cycle of n trivalent blacks.

    The j-th vertex reads the (j+1)-th (mod n) and the leg perm[j]; the
    vertex carrying perm[0] is numbered last.
    """
    if n < 1:
        raise BadPermutation("C-series graphs need n >= 1")
    perm = tuple(range(1, n + 1)) if perm is None else tuple(perm)
    _check_perm(perm, range(1, n + 1))
    inputs = tuple((((i + 1) % n), -perm[i]) for i in range(n))
    return canonical_form(_root_last(DecoratedGraph((BLACK,) * n, inputs, ())))


def b_decorations(n):
    """All leg orders of the B-series graphs with n legs."""
    return [tuple(p) for p in permutations(range(2, n + 1))]


def c_decorations(n):
    """Leg orders up to rotation, normalised to start with 1."""
    return [(1,) + tuple(p) for p in permutations(range(2, n + 1))]
