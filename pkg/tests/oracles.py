"""Slow, independent reference implementations used by the tests."""

from itertools import permutations, product

from qgraph.graphcore import DecoratedGraph, canonical_form, classify, validate


def brute_force_graphs(types, n_in, m_out):
    """All nonzero canonical graphs on the vertex multiset ``types``.

    Every slot is wired to every possible source and the output leg to every
    vertex; invalid or disconnected wirings are discarded.
    """
    colors = tuple(c for c, _ in types)
    arities = [a for _, a in types]
    V = len(types)
    slots = sum(arities)
    if slots != V - m_out + n_in:
        return set()
    found = set()
    vertex_sources = list(range(V))
    for wiring in product(vertex_sources, repeat=slots - n_in):
        for leg_pos in _leg_positions(slots, n_in):
            for labels in permutations(range(1, n_in + 1)):
                flat = []
                it = iter(wiring)
                lab = iter(labels)
                for i in range(slots):
                    flat.append(-next(lab) if i in leg_pos else next(it))
                inputs = []
                pos = 0
                for a in arities:
                    inputs.append(tuple(flat[pos:pos + a]))
                    pos += a
                outs = [()] if m_out == 0 else [(v,) for v in range(V)]
                for out in outs:
                    g = DecoratedGraph(colors, tuple(inputs), out)
                    if not validate(g) or not g.is_connected():
                        continue
                    cg, sign = canonical_form(g)
                    if sign:
                        found.add(cg)
    return found


def _leg_positions(slots, n_in):
    from itertools import combinations

    for c in combinations(range(slots), n_in):
        yield set(c)


def in_subcomplex(graphs, sub):
    return {g for g in graphs if classify(g) == sub}


def dense_rank(rows, n_cols):
    """Rank by plain row reduction of a dense Fraction matrix."""
    from fractions import Fraction

    m = [[Fraction(r.get(j, 0)) for j in range(n_cols)] for r in rows]
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank
