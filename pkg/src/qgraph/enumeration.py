"""Exhaustive generation of connected A-graphs in a fixed grading.

Shapes (graphs with unlabelled legs) are generated recursively as rooted
trees, or as cycles of marked trees when there is no outgoing leg.  Leg
labels are then assigned in every possible way and the results deduplicated
by canonical form.
"""

from __future__ import annotations

import os
from functools import lru_cache
from itertools import permutations, product

from .cochain import graph_key
from .graphcore import BLACK, G1, G2, G3, G4, WHITE, DecoratedGraph, canonical_form, classify

DEFAULT_LIMIT = 12

_LEG = (0, 0)
_MARK = (1,)
_CC = {BLACK: 0, WHITE: 1}
_Q0 = (2, 0, 0, ())


class LimitExceeded(RuntimeError):
    pass


def vertex_limit():
    return int(os.environ.get("QGRAPH_LIMIT", DEFAULT_LIMIT))


def _arity_sum(types):
    return sum(a for _, a in types)


def _set_partitions(items, j):
    """Distinct unordered partitions of the multiset ``items`` into j nonempty blocks."""
    items = list(items)
    n = len(items)
    seen = set()
    if j == 0:
        if n == 0:
            yield ()
        return
    if n < j:
        return

    def rec(i, blocks):
        if i == n:
            if len(blocks) == j:
                key = tuple(sorted(tuple(sorted(b)) for b in blocks))
                if key not in seen:
                    seen.add(key)
                    yield key
            return
        if n - i < j - len(blocks):
            return
        for b in blocks:
            b.append(items[i])
            yield from rec(i + 1, blocks)
            b.pop()
        if len(blocks) < j:
            blocks.append([items[i]])
            yield from rec(i + 1, blocks)
            blocks.pop()

    yield from rec(0, [])


def _normalize(color, kids):
    n = len(kids)
    if color == BLACK:
        return tuple(sorted(kids))
    if n >= 3:
        head = sorted(kids[: n - 3])
        a, b = sorted(kids[n - 2:])
        return tuple(head) + (kids[n - 3], a, b)
    return tuple(kids)


def _arrangements(color, kids):
    if color == BLACK:
        yield tuple(sorted(kids))
        return
    seen = set()
    for p in set(permutations(kids)):
        k = _normalize(color, list(p))
        if k not in seen:
            seen.add(k)
            yield k


def _root_codes(types, legs, marked):
    """Codes of trees using exactly ``types`` and ``legs`` (root may carry a mark)."""
    out = set()
    extra = 1 if marked else 0
    if _arity_sum(types) != len(types) - 1 + legs + extra:
        return out
    for t in sorted(set(types)):
        color, a = t
        if a < extra:
            continue
        rest = list(types)
        rest.remove(t)
        free = a - extra
        for j in range(0, min(free, len(rest)) + 1):
            for blocks in _set_partitions(sorted(rest), j):
                block_legs = [_arity_sum(b) - len(b) + 1 for b in blocks]
                if any(x < 0 for x in block_legs):
                    continue
                if sum(block_legs) + (free - j) != legs:
                    continue
                choices = [sorted(tree_codes(b, lb)) for b, lb in zip(blocks, block_legs)]
                for combo in product(*choices):
                    if color == BLACK and _Q0 in combo:
                        continue
                    kids = list(combo) + [_LEG] * (free - j) + ([_MARK] if marked else [])
                    for arranged in _arrangements(color, kids):
                        out.add((2, _CC[color], a, arranged))
    return out


@lru_cache(maxsize=None)
def _tree_codes(types, legs):
    return frozenset(_root_codes(types, legs, False))


@lru_cache(maxsize=None)
def _marked_codes(types, legs):
    return frozenset(_root_codes(types, legs, True))


def tree_codes(types, legs):
    return _tree_codes(tuple(sorted(types)), legs)


def marked_codes(types, legs):
    return _marked_codes(tuple(sorted(types)), legs)


def cycle_shapes(types, legs):
    """Canonical cyclic sequences of marked trees using all resources."""
    types = tuple(sorted(types))
    out = set()
    for L in range(1, len(types) + 1):
        for blocks in _set_partitions(types, L):
            block_legs = [_arity_sum(b) - len(b) for b in blocks]
            if any(x < 0 for x in block_legs) or sum(block_legs) != legs:
                continue
            idx = list(range(L))
            for order in set(permutations(idx)):
                if order[0] != 0:
                    continue  # rotations are identified
                choices = [sorted(marked_codes(blocks[i], block_legs[i])) for i in order]
                for combo in product(*choices):
                    seq = list(combo)
                    rots = [tuple(seq[r:] + seq[:r]) for r in range(L)]
                    out.add(min(rots))
    return out


def _build(shape_root, cycle=None):
    """Turn shape codes into a DecoratedGraph with legs labelled in order."""
    colors = []
    inputs = []
    counter = [0]

    def make(code):
        _, cc, a, kids = code
        v = len(colors)
        colors.append(BLACK if cc == 0 else WHITE)
        inputs.append(None)
        slots = []
        for kid in kids:
            if kid == _LEG:
                counter[0] += 1
                slots.append(-counter[0])
            elif kid == _MARK:
                slots.append("mark")
            else:
                slots.append(make(kid))
        inputs[v] = slots
        return v

    if cycle is None:
        root = make(shape_root)
        out = (root,)
    else:
        ids = [make(code) for code in cycle]
        for i, v in enumerate(ids):
            prev = ids[i - 1]
            inputs[v] = [prev if s == "mark" else s for s in inputs[v]]
        out = ()
    return DecoratedGraph(tuple(colors), tuple(tuple(s) for s in inputs), out), counter[0]


def graphs_for_types(types, n_in, m_out):
    """All nonzero canonical connected graphs with the given vertex multiset."""
    types = tuple(sorted(types))
    result = set()
    if m_out == 1:
        raw = [_build(code) for code in tree_codes(types, n_in)]
    elif m_out == 0:
        raw = [_build(None, cycle) for cycle in cycle_shapes(types, n_in)]
    else:
        return result
    perms = list(permutations(range(1, n_in + 1)))
    for g, n in raw:
        assert n == n_in
        for p in perms:
            h = g.relabel_legs({i + 1: p[i] for i in range(n_in)}) if n_in > 1 else g
            cg, sign = canonical_form(h, check=False)
            if sign:
                result.add(cg)
    return result


def _black_arity_multisets(k, total, allowed):
    allowed = sorted(a for a in allowed if a <= total)

    def rec(i, remaining, start):
        if i == k:
            if remaining == 0:
                yield ()
            return
        for j, a in enumerate(allowed[start:], start):
            if a > remaining:
                break
            for rest in rec(i + 1, remaining - a, j):
                yield (a,) + rest

    yield from rec(0, total, 0)


def enumerate_basis(n_in, m_out, k_black, white_profile=(), subcomplex=None,
                    black_arities=None, limit=None):
    """Sorted list of canonical connected A-graphs in the requested grading.

    ``white_profile`` lists in_arities of the white vertices; black in_arities
    range over ``black_arities`` (default: all).  Graphs of sign 0 are dropped.
    """
    limit = vertex_limit() if limit is None else limit
    V = k_black + len(white_profile)
    if V > limit:
        raise LimitExceeded(f"{V} vertices exceeds the enumeration limit {limit}")
    if V == 0 or m_out not in (0, 1):
        return []
    total = V - m_out + n_in - sum(white_profile)
    if total < 0:
        return []
    if black_arities is None:
        black_arities = range(0, total + 1)
    whites = [(WHITE, a) for a in white_profile]
    found = set()
    for arities in _black_arity_multisets(k_black, total, black_arities):
        types = whites + [(BLACK, a) for a in arities]
        for g in graphs_for_types(types, n_in, m_out):
            if subcomplex is None or classify(g) == subcomplex:
                found.add(g)
    return sorted(found, key=graph_key)


def sector_basis(subcomplex, n_in, m_out, degree, limit=None, max_white=None):
    """Basis of a G1/G2/G3 sector at a given Q-degree."""
    if degree < 0:
        return []
    if subcomplex == G1:
        if (n_in, m_out, degree) == (0, 1, 1):
            return enumerate_basis(0, 1, 1, (), G1, limit=limit)
        return []
    if subcomplex == G2:
        out = []
        for w in range(0, degree // 2 + 1):
            out += enumerate_basis(n_in, m_out, degree - 2 * w, (1,) * w, G2,
                                   black_arities=(1,), limit=limit)
        return sorted(out, key=graph_key)
    if subcomplex == G3:
        return enumerate_basis(n_in, m_out, degree, (), G3,
                               black_arities=range(2, degree + n_in + 2), limit=limit)
    raise ValueError(f"sector_basis does not handle {subcomplex}; use enumerate_basis")


def g4_basis(n_in, m_out, n_vertices, max_arity=None, limit=None):
    """All G4 graphs with exactly ``n_vertices`` basic vertices.

    Whites have in_arity 3..max_arity; blacks have in_arity 0..max_arity.
    """
    if max_arity is None:
        max_arity = n_vertices - m_out + n_in
    found = set()
    for w in range(1, n_vertices + 1):
        for prof in _white_profiles(w, max_arity):
            k = n_vertices - w
            found.update(enumerate_basis(n_in, m_out, k, prof, G4,
                                         black_arities=range(0, max_arity + 1), limit=limit))
    # black-only G4 graphs mix bivalent and multivalent black vertices
    found.update(enumerate_basis(n_in, m_out, n_vertices, (), G4,
                                 black_arities=range(0, max_arity + 1), limit=limit))
    return sorted(found, key=graph_key)


def _white_profiles(w, max_arity):
    def rec(i, start):
        if i == w:
            yield ()
            return
        for a in range(start, max_arity + 1):
            for rest in rec(i + 1, a):
                yield (a,) + rest

    yield from rec(0, 3)
