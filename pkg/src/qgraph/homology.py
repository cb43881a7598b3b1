"""Exact linear algebra over graph bases: relations, quotient dimensions, Betti numbers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cochain import Cochain, graph_key
from .complex import coboundary, coboundary_d0, expand_composites
from .enumeration import enumerate_basis, sector_basis
from .graphcore import G2, G4, WHITE, DecoratedGraph, classify


class BasisNotClosed(ValueError):
    pass


class NotACocycle(ValueError):
    pass


# --- sparse exact elimination ---------------------------------------------


class RationalMatrix:
    """Sparse rational matrix whose columns are indexed by graphs."""

    def __init__(self, columns, rows=()):
        self.columns = list(columns)
        self.index = {g: i for i, g in enumerate(self.columns)}
        self.rows = []
        for r in rows:
            self.append(r)

    def append(self, cochain):
        row = {}
        for g, c in cochain.terms.items():
            if g not in self.index:
                raise BasisNotClosed(f"graph outside the basis: {g}")
            row[self.index[g]] = c
        self.rows.append(row)

    @property
    def shape(self):
        return len(self.rows), len(self.columns)

    def rank(self):
        return rank(self.rows)

    def to_dense(self):
        n = len(self.columns)
        return [[r.get(j, Fraction(0)) for j in range(n)] for r in self.rows]


def _eliminate(row, col, pivot):
    c = row[col]
    for j, v in pivot.items():
        nv = row.get(j, 0) - c * v
        if nv:
            row[j] = nv
        else:
            row.pop(j, None)
    return c


def _reduce(row, pivots):
    """Reduce ``row`` against echelon ``pivots`` (col -> normalised row)."""
    row = dict(row)
    while True:
        hit = [c for c in row if c in pivots]
        if not hit:
            return row
        col = min(hit)
        _eliminate(row, col, pivots[col])


def _insert(row, pivots):
    """Add ``row`` to the echelon form; return True if it raised the rank."""
    row = _reduce(row, pivots)
    if not row:
        return False
    col = min(row)
    inv = 1 / Fraction(row[col])
    pivots[col] = {j: v * inv for j, v in row.items()}
    return True


def rank(rows):
    pivots = {}
    return sum(1 for r in rows if _insert(r, pivots))


def solve(columns, target):
    """Find x with sum_i x_i columns[i] == target (all sparse dicts).

    Returns a dict of coefficients or None when target is outside the span.
    """
    pivots = {}
    # track each echelon row as a combination of the input columns
    combos = {}
    for i, col in enumerate(columns):
        row = dict(col)
        comb = {i: Fraction(1)}
        row, comb = _reduce_tracked(row, comb, pivots, combos)
        if row:
            p = min(row)
            inv = 1 / Fraction(row[p])
            pivots[p] = {j: v * inv for j, v in row.items()}
            combos[p] = {j: v * inv for j, v in comb.items()}
    row, comb = _reduce_tracked(dict(target), {}, pivots, combos)
    if row:
        return None
    return {i: -v for i, v in comb.items() if v}


def _reduce_tracked(row, comb, pivots, combos):
    row, comb = dict(row), dict(comb)
    while True:
        hit = [c for c in row if c in pivots]
        if not hit:
            return row, comb
        col = min(hit)
        c = _eliminate(row, col, pivots[col])
        for j, v in combos[col].items():
            nv = comb.get(j, 0) - c * v
            if nv:
                comb[j] = nv
            else:
                comb.pop(j, None)


# --- white-vertex relations ------------------------------------------------


def _cyclic_relation(g, v, slots):
    """Sum of the three cyclic rotations of the sources on ``slots`` of ``v``."""
    out = Cochain()
    base = list(g.inputs[v])
    vals = [base[s] for s in slots]
    for r in range(3):
        new = list(base)
        for i, s in enumerate(slots):
            new[s] = vals[(i + r) % 3]
        inputs = list(g.inputs)
        inputs[v] = tuple(new)
        out.add(DecoratedGraph(g.colors, tuple(inputs), g.out_legs))
    return out


def relations_of(g):
    """Cyclic (Bianchi-type) relations generated at each white vertex of ``g``."""
    rels = []
    for v, (c, srcs) in enumerate(zip(g.colors, g.inputs)):
        n = len(srcs)
        if c != WHITE or n < 3:
            continue
        rels.append(_cyclic_relation(g, v, (n - 3, n - 2, n - 1)))
        if n >= 4:
            rels.append(_cyclic_relation(g, v, (n - 4, n - 2, n - 1)))
    return [r for r in rels if r]


def g2_shadows(basis):
    """Expanded bivalent-white (G2) graphs that occur among ``basis``.

    Expanding a bivalent white vertex yields a trivalent white vertex fed by
    two univalent blacks, so some graphs that look like G4 graphs are G2
    graphs in expanded form.  They are quotiented out of G4 sectors.
    """
    present = set(basis)
    rows = []
    for n, m, k in sorted({(g.n_in, g.n_out, g.n_black) for g in basis}):
        for h in sector_basis(G2, n, m, k):
            e = expand_composites(h)
            if e and set(e.terms) <= present and all(classify(x) == G4 for x in e.terms):
                rows.append(e)
    return rows


def relation_matrix(basis, shadows=False):
    """Matrix whose rows span the relation subspace of ``span(basis)``.

    With ``shadows`` the expanded G2 graphs in the basis are added as rows.
    """
    m = RationalMatrix(basis)
    for g in basis:
        for r in relations_of(g):
            m.append(r)
    if shadows:
        for r in g2_shadows(basis):
            m.append(r)
    return m


@dataclass
class QuotientBasis:
    spanning: list
    relations: RationalMatrix

    @property
    def dim(self):
        return len(self.spanning) - self.relations.rank()


def quotient(basis, shadows=False):
    return QuotientBasis(list(basis), relation_matrix(basis, shadows))


def in_relation_span(c, shadows=False):
    """True when ``c`` vanishes modulo the white-vertex relations.

    With ``shadows`` it may also differ from zero by expanded G2 graphs.
    """
    if not c:
        return True
    basis = sorted(_relation_closure(c.terms), key=graph_key)
    m = relation_matrix(basis, shadows)
    target = {m.index[g]: v for g, v in c.terms.items()}
    return solve(m.rows, target) is not None


def _relation_closure(graphs):
    seen = set(graphs)
    todo = list(graphs)
    while todo:
        g = todo.pop()
        for r in relations_of(g):
            for h in r.terms:
                if h not in seen:
                    seen.add(h)
                    todo.append(h)
    return seen


# --- sectors and Betti numbers --------------------------------------------


def sector(subcomplex, n_in, m_out, k, white_profile=(), limit=None):
    """Spanning graphs of a sector; for G4, ``k`` counts black vertices."""
    if subcomplex == G4:
        return enumerate_basis(n_in, m_out, k, tuple(white_profile), G4, limit=limit)
    return sector_basis(subcomplex, n_in, m_out, k, limit=limit)


def _differential(subcomplex):
    return coboundary_d0 if subcomplex == G4 else coboundary


def _image_rank(subcomplex, source, target):
    """rank of the induced map span(source)/R -> span(target)/R."""
    d = _differential(subcomplex)
    m = relation_matrix(target, shadows=subcomplex == G4)
    base = m.rank()
    for g in source:
        m.append(d(g))
    return m.rank() - base


@dataclass
class BettiRecord:
    dim_space: int
    rank_in: int
    rank_out: int
    betti: int

    def to_json(self):
        return dict(dim_space=self.dim_space, rank_in=self.rank_in,
                    rank_out=self.rank_out, betti=self.betti)


def betti_record(subcomplex, n_in, m_out, k, white_profile=(), limit=None):
    """Dimension data of the cohomology at grading ``k``.

    For G4 the d0-cohomology (the E1 page) is computed instead.
    """
    def sec(j):
        return sector(subcomplex, n_in, m_out, j, white_profile, limit)

    here, below, above = sec(k), sec(k - 1), sec(k + 1)
    dim = quotient(here, shadows=subcomplex == G4).dim
    rank_in = _image_rank(subcomplex, below, here) if below else 0
    rank_out = _image_rank(subcomplex, here, above) if here else 0
    return BettiRecord(dim, rank_in, rank_out, dim - rank_in - rank_out)


def betti(subcomplex, n_in, m_out, k, white_profile=(), limit=None):
    return betti_record(subcomplex, n_in, m_out, k, white_profile, limit).betti


# --- coboundary certificates ----------------------------------------------


@dataclass
class Certificate:
    is_coboundary: bool
    primitive: Cochain | None
    rank_without: int
    rank_with: int

    def __bool__(self):
        return self.is_coboundary


def _lower_basis(z):
    subs = {classify(g) for g in z.terms}
    grads = z.gradings()
    if len(subs) != 1 or len(grads) != 1:
        raise ValueError("cochain must lie in a single sector")
    sub = subs.pop()
    (deg, n, m), = grads
    if sub == G4:
        raise ValueError("coboundary certificates are computed for G1, G2 and G3 only")
    return sector_basis(sub, n, m, deg - 1)


def is_coboundary(z):
    """Solve d x = z exactly over the sector one degree lower."""
    if not z:
        return Certificate(True, Cochain(), 0, 0)
    if not in_relation_span(coboundary(z)):
        raise NotACocycle("the cochain is not closed")
    lower = _lower_basis(z)
    images = [coboundary(g) for g in lower]
    graphs = sorted(set(z.terms).union(*[set(c.terms) for c in images]), key=graph_key)
    rels = relation_matrix(sorted(_relation_closure(graphs), key=graph_key))
    extra = sorted(set(rels.columns) - set(graphs), key=graph_key)
    allg = graphs + extra
    index = {g: i for i, g in enumerate(allg)}
    colvecs = [{index[g]: v for g, v in c.terms.items()} for c in images]
    relvecs = [{index[rels.columns[j]]: v for j, v in r.items()} for r in rels.rows]
    target = {index[g]: v for g, v in z.terms.items()}
    r0 = rank(colvecs + relvecs)
    r1 = rank(colvecs + relvecs + [target])
    if r1 > r0:
        return Certificate(False, None, r0, r1)
    sol = solve(colvecs + relvecs, target)
    prim = Cochain()
    for i, v in sol.items():
        if i < len(lower):
            prim.add(lower[i], v, canonical=True)
    return Certificate(True, prim, r0, r1)
