"""Coboundary operator, the filtration differential d0, its homotopy and Laplacian."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from itertools import combinations

from .cochain import Cochain
from .graphcore import (
    BLACK,
    G4,
    WHITE,
    DecoratedGraph,
    WrongSubcomplex,
    black_parity,
    branches,
    classify,
    violates_a_rule,
)

HALF = Fraction(1, 2)


class UnspecifiedDifferential(ValueError):
    """The coboundary of a white vertex of in_arity >= 4 is not known in full."""


class NotDiagonal(AssertionError):
    pass


class DifferentialDomain(Enum):
    FULL_EXACT = "full_exact"
    D0_ONLY = "d0_only"


def domain(g):
    if all(c == BLACK or len(s) in (1, 3) for c, s in zip(g.colors, g.inputs)):
        return DifferentialDomain.FULL_EXACT
    return DifferentialDomain.D0_ONLY


# A piece replaces one vertex v.  Each piece vertex is (colour, sources) where a
# source is ('x', i) for the i-th original input of v or ('n', j) for the j-th
# piece vertex; ``out`` names the piece vertex taking over v's output.


def substitute(g, v, pieces, out):
    """Replace vertex ``v`` by ``pieces``, placed first in the ordering.

    Returns the new graph and the sign of moving ``v`` to the front.
    """
    others = [u for u in range(g.n_vertices) if u != v]
    np_ = len(pieces)
    new_id = {u: np_ + i for i, u in enumerate(others)}
    new_id[v] = out
    old_in = g.inputs[v]

    def tr(src):
        return new_id[src] if src >= 0 else src

    colors = [c for c, _ in pieces] + [g.colors[u] for u in others]
    inputs = []
    for _, srcs in pieces:
        slots = []
        for kind, i in srcs:
            slots.append(tr(old_in[i]) if kind == "x" else i)
        inputs.append(tuple(slots))
    for u in others:
        inputs.append(tuple(tr(s) for s in g.inputs[u]))
    outs = tuple(new_id[u] for u in g.out_legs)
    sign = 1
    if g.colors[v] == BLACK:
        before = sum(1 for u in range(v) if g.colors[u] == BLACK)
        sign = -1 if before % 2 else 1
    return DecoratedGraph(tuple(colors), tuple(inputs), outs), sign


def vertex_differential(g, v):
    """List of (pieces, out, coefficient) describing the local coboundary at v."""
    c = g.colors[v]
    n = len(g.inputs[v])
    x = [("x", i) for i in range(n)]
    if c == BLACK:
        if n in (0, 2):
            return []
        if n == 1:
            chain = ([(BLACK, [x[0]]), (BLACK, [("n", 0)])], 1, Fraction(1))
            # -1/2 R(X, Q, Q) is minus the composite bivalent white vertex
            white = ([(WHITE, [x[0]])], 0, Fraction(-1))
            return [chain, white]
        terms = []
        for size in range(2, n):
            for lower in combinations(range(n), size):
                upper = [x[i] for i in range(n) if i not in lower]
                pieces = [
                    (BLACK, upper + [("n", 1)]),
                    (BLACK, [x[i] for i in lower]),
                ]
                terms.append((pieces, 0, Fraction(1)))
        return terms
    if n == 1:
        return [
            ([(BLACK, [x[0]]), (WHITE, [("n", 0)])], 1, Fraction(1)),
            ([(WHITE, [x[0]]), (BLACK, [("n", 0)])], 1, Fraction(-1)),
        ]
    if n == 3:
        terms = [([(BLACK, []), (WHITE, [("n", 0)] + x)], 1, Fraction(1))]
        for k in range(n):
            srcs = list(x)
            srcs[k] = ("n", 0)
            terms.append(([(BLACK, [x[k]]), (WHITE, srcs)], 1, Fraction(1)))
        terms.append(([(WHITE, x), (BLACK, [("n", 0)])], 1, Fraction(-1)))
        return terms
    raise UnspecifiedDifferential(
        f"coboundary of a white vertex with in_arity {n} has unknown higher terms"
    )


def coboundary_graph(g, into=None, scale=1):
    out = Cochain() if into is None else into
    for v in range(g.n_vertices):
        for pieces, o, coeff in vertex_differential(g, v):
            h, sign = substitute(g, v, pieces, o)
            if violates_a_rule(h):
                continue
            out.add(h, coeff * sign * scale)
    return out


def coboundary(c):
    """Apply the graph coboundary to a cochain (or a single graph)."""
    if isinstance(c, DecoratedGraph):
        c = Cochain.from_graph(c)
    out = Cochain()
    for g, coeff in c.terms.items():
        coboundary_graph(g, out, coeff)
    return out


# --- composite white vertices ------------------------------------------


def expand_composites(c):
    """Rewrite every bivalent white vertex as 1/2 R3(X, Q, Q)."""
    if isinstance(c, DecoratedGraph):
        c = Cochain.from_graph(c)
    out = Cochain()
    for g, coeff in c.terms.items():
        out.add(*_expand_graph(g, coeff))
    return out


def _expand_graph(g, coeff):
    while True:
        comp = [v for v in range(g.n_vertices) if g.colors[v] == WHITE and len(g.inputs[v]) == 1]
        if not comp:
            return g, coeff
        pieces = [(BLACK, []), (BLACK, []), (WHITE, [("x", 0), ("n", 1), ("n", 0)])]
        g, _ = substitute(g, comp[0], pieces, 2)
        coeff = coeff * HALF


# --- d0, homotopy, Laplacian --------------------------------------------


def _require_g4(g):
    if classify(g) != G4:
        raise WrongSubcomplex("operation is defined on G4 graphs only")


def _with_branch_first(g, br):
    """Reorder so the branch vertices come first in flow order."""
    rest = [u for u in range(g.n_vertices) if u not in br.vertices]
    order = list(br.vertices) + rest
    return g.reorder(order), black_parity(order, g.colors)


def _insert_on_branch(g, br):
    """Graph with one more bivalent black on ``br``; branch vertices first."""
    h, sign = _with_branch_first(g, br)
    k = br.length
    pos = {old: i for i, old in enumerate(list(br.vertices) + [u for u in range(g.n_vertices) if u not in br.vertices])}
    if k:
        src = k - 1
    elif br.start[0] == "leg":
        src = -br.start[1]
    else:
        src = pos[br.start[1]]
    dest = br.end
    if dest[0] == "slot":
        dest = ("slot", pos[dest[1]], dest[2])
    colors = list(h.colors[:k]) + [BLACK] + list(h.colors[k:])

    def shift(s):
        return s + 1 if s >= k else s

    inputs = [tuple(shift(s) for s in slots) for slots in h.inputs]
    inputs.insert(k, (shift(src) if src >= 0 else src,))
    outs = [shift(v) for v in h.out_legs]
    if dest[0] == "out":
        outs[dest[1] - 1] = k
    else:
        w, s = shift(dest[1]), dest[2]
        slots = list(inputs[w])
        slots[s] = k
        inputs[w] = tuple(slots)
    return DecoratedGraph(tuple(colors), tuple(inputs), tuple(outs)), sign


def _remove_from_branch(g, br):
    """Graph with the last bivalent black of ``br`` removed; branch first."""
    h, sign = _with_branch_first(g, br)
    k = br.length
    last = k - 1
    src = h.inputs[last][0]

    def shift(s):
        return s - 1 if s > last else s

    if src >= 0:
        src = shift(src)
    inputs = []
    for u, slots in enumerate(h.inputs):
        if u != last:
            inputs.append(tuple(src if s == last else shift(s) for s in slots))
    outs = [src if v == last else shift(v) for v in h.out_legs]
    colors = h.colors[:last] + h.colors[last + 1:]
    return DecoratedGraph(tuple(colors), tuple(inputs), tuple(outs)), sign


def _mark_deg(m):
    return 1 if m == "w" else 0


def d0_coefficient(k, alpha, beta):
    a, b = _mark_deg(alpha), _mark_deg(beta)
    return HALF * (-1) ** a * (1 - (-1) ** (k + a + b))


def h_coefficient(k, alpha, beta):
    if k == 0:
        return Fraction(0)
    a, b = _mark_deg(alpha), _mark_deg(beta)
    return HALF * (-1) ** a * (1 + (-1) ** (k + a + b))


def _g4_terms(c):
    if isinstance(c, DecoratedGraph):
        c = Cochain.from_graph(c)
    c = expand_composites(c) if any(
        col == WHITE and len(s) == 1 for g in c.terms for col, s in zip(g.colors, g.inputs)
    ) else c
    for g in c.terms:
        _require_g4(g)
    return c


def coboundary_d0(c):
    """Associated-graded differential: lengthen each branch by one vertex."""
    c = _g4_terms(c)
    out = Cochain()
    for g, coeff in c.terms.items():
        for br in branches(g):
            k = d0_coefficient(br.length, br.alpha, br.beta)
            if k:
                h, sign = _insert_on_branch(g, br)
                if not violates_a_rule(h):
                    out.add(h, coeff * k * sign)
    return out


def homotopy_h(c):
    """Contracting homotopy: shorten each branch by one vertex."""
    c = _g4_terms(c)
    out = Cochain()
    for g, coeff in c.terms.items():
        for br in branches(g):
            k = h_coefficient(br.length, br.alpha, br.beta)
            if k:
                h, sign = _remove_from_branch(g, br)
                out.add(h, coeff * k * sign)
    return out


def eigenvalue_counts(g):
    """(n1, n2, n3) of a G4 graph with composites expanded."""
    n1 = n2 = n3 = 0
    for br in branches(g):
        if br.length:
            n1 += 1
        elif {br.alpha, br.beta} == {"b", "w"}:
            n2 += 1
        elif {br.alpha, br.beta} == {"leg", "w"}:
            n3 += 1
    return n1, n2, n3


def laplacian(g):
    """Return (eigenvalue, is_diagonal) for the G4 graph ``g``.

    Raises NotDiagonal if (h d0 + d0 h) g is not a multiple of g.
    """
    g, _ = _expand_graph(g, 1)
    _require_g4(g)
    lam = sum(eigenvalue_counts(g))
    c = Cochain.from_graph(g)
    if c:
        lap = homotopy_h(coboundary_d0(c)) + coboundary_d0(homotopy_h(c))
        if lap != c * lam:
            raise NotDiagonal(f"Laplacian is not diagonal on {g}: {lap}")
    return lam, True
