"""Decorated graphs, validity rules, orientation signs and canonical forms.

A graph is stored with its vertices listed in orientation order: vertex ``i``
is the ``i``-th vertex of the ordering.  Each vertex has a colour (``'b'`` for
black, ``'w'`` for white) and a tuple of input sources, one per slot.  A
source ``s >= 0`` is the vertex whose output feeds the slot; a source
``s < 0`` is the incoming leg labelled ``-s``.  ``out_legs[j]`` is the vertex
whose output is the outgoing leg labelled ``j + 1``.

Every vertex has exactly one output, so a connected graph is a functional
graph: a rooted tree (one outgoing leg) or a single cycle with trees hanging
off it (no outgoing leg).  Canonical forms exploit this structure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

BLACK = "b"
WHITE = "w"

_COLOR_CODE = {BLACK: 0, WHITE: 1}
_MARK = (1,)


class GraphError(ValueError):
    pass


class InvalidGraph(GraphError):
    pass


class Disconnected(GraphError):
    pass


class WrongSubcomplex(GraphError):
    pass


@dataclass(frozen=True)
class DecoratedGraph:
    colors: tuple
    inputs: tuple
    out_legs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        object.__setattr__(self, "inputs", tuple(tuple(s) for s in self.inputs))
        object.__setattr__(self, "out_legs", tuple(self.out_legs))

    @property
    def n_vertices(self):
        return len(self.colors)

    def arity(self, v):
        return len(self.inputs[v])

    @property
    def n_in(self):
        return sum(1 for slots in self.inputs for s in slots if s < 0)

    @property
    def n_out(self):
        return len(self.out_legs)

    @property
    def n_black(self):
        return sum(1 for c in self.colors if c == BLACK)

    @property
    def degree(self):
        """Homogeneity in Q: black vertices, plus two per composite white."""
        k = 0
        for c, slots in zip(self.colors, self.inputs):
            if c == BLACK:
                k += 1
            elif len(slots) == 1:
                k += 2
        return k

    @property
    def grading(self):
        return (self.degree, self.n_in, self.n_out)

    def vertex_types(self):
        return sorted((c, len(s)) for c, s in zip(self.colors, self.inputs))

    def targets(self):
        """Map vertex -> ('slot', w, s) or ('out', label) for its output."""
        tgt = {}
        for w, slots in enumerate(self.inputs):
            for s, src in enumerate(slots):
                if src >= 0:
                    tgt.setdefault(src, []).append(("slot", w, s))
        for j, v in enumerate(self.out_legs):
            tgt.setdefault(v, []).append(("out", j + 1))
        return tgt

    def is_connected(self):
        n = self.n_vertices
        if n == 0:
            return False
        adj = [set() for _ in range(n)]
        for w, slots in enumerate(self.inputs):
            for src in slots:
                if src >= 0:
                    adj[w].add(src)
                    adj[src].add(w)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == n

    def reorder(self, order):
        """Return the same graph with vertices listed as ``order`` (old ids)."""
        new = {old: i for i, old in enumerate(order)}
        inputs = tuple(
            tuple(new[s] if s >= 0 else s for s in self.inputs[old]) for old in order
        )
        return DecoratedGraph(
            tuple(self.colors[old] for old in order),
            inputs,
            tuple(new[v] for v in self.out_legs),
        )

    def relabel_legs(self, in_perm=None, out_perm=None):
        """Relabel legs; ``in_perm[old_label] = new_label`` (dicts or None)."""
        inputs = self.inputs
        if in_perm:
            inputs = tuple(
                tuple(-in_perm[-s] if s < 0 else s for s in slots) for slots in inputs
            )
        out = self.out_legs
        if out_perm:
            lst = [None] * len(out)
            for j, v in enumerate(out):
                lst[out_perm[j + 1] - 1] = v
            out = tuple(lst)
        return DecoratedGraph(self.colors, inputs, out)

    # --- serialisation -------------------------------------------------

    def to_json(self):
        vertices = [
            {"id": i, "color": "black" if c == BLACK else "white", "in_arity": len(s)}
            for i, (c, s) in enumerate(zip(self.colors, self.inputs))
        ]
        edges = []
        in_legs = {}
        for w, slots in enumerate(self.inputs):
            for s, src in enumerate(slots):
                if src >= 0:
                    edges.append([src, w, s + 1])
                else:
                    in_legs[str(-src)] = [w, s + 1]
        out_legs = {str(j + 1): v for j, v in enumerate(self.out_legs)}
        return {
            "vertices": vertices,
            "edges": edges,
            "in_legs": dict(sorted(in_legs.items(), key=lambda kv: int(kv[0]))),
            "out_legs": out_legs,
            "ordering": list(range(self.n_vertices)),
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        ids = [v["id"] for v in data["vertices"]]
        ordering = data.get("ordering") or ids
        if sorted(map(str, ordering)) != sorted(map(str, ids)):
            raise InvalidGraph("ordering must be a permutation of the vertex ids")
        pos = {str(vid): i for i, vid in enumerate(ordering)}
        by_id = {str(v["id"]): v for v in data["vertices"]}
        colors = []
        slots = []
        for vid in ordering:
            v = by_id[str(vid)]
            colors.append(BLACK if v["color"] in ("black", "b") else WHITE)
            slots.append([None] * int(v["in_arity"]))
        for src, dst, slot in data.get("edges", []):
            _fill(slots, pos[str(dst)], int(slot) - 1, pos[str(src)])
        for label, (dst, slot) in data.get("in_legs", {}).items():
            _fill(slots, pos[str(dst)], int(slot) - 1, -int(label))
        outs = data.get("out_legs", {})
        out_legs = [None] * len(outs)
        for label, v in outs.items():
            j = int(label) - 1
            if not 0 <= j < len(outs) or out_legs[j] is not None:
                raise InvalidGraph(f"bad out-leg label {label}")
            out_legs[j] = pos[str(v)]
        for v, s in enumerate(slots):
            if any(x is None for x in s):
                raise InvalidGraph(f"vertex {ordering[v]} has an unfilled slot")
        return cls(tuple(colors), tuple(tuple(s) for s in slots), tuple(out_legs))

    def to_dot(self, name="G"):
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, c in enumerate(self.colors):
            style = "filled" if c == BLACK else "solid"
            fill = "black" if c == BLACK else "white"
            lines.append(
                f'  v{i} [shape=circle, style={style}, fillcolor={fill}, '
                f'label="", xlabel="{i + 1}", width=0.15];'
            )
        for w, slots in enumerate(self.inputs):
            for s, src in enumerate(slots):
                if src >= 0:
                    lines.append(f'  v{src} -> v{w} [headlabel="{s + 1}"];')
                else:
                    lines.append(f"  in{-src} [shape=none, label=\"{-src}\"];")
                    lines.append(f'  in{-src} -> v{w} [headlabel="{s + 1}"];')
        for j, v in enumerate(self.out_legs):
            lines.append(f"  out{j + 1} [shape=none, label=\"{j + 1}\"];")
            lines.append(f"  v{v} -> out{j + 1};")
        lines.append("}")
        return "\n".join(lines)


def _fill(slots, v, s, src):
    if not 0 <= s < len(slots[v]):
        raise InvalidGraph(f"slot {s + 1} out of range")
    if slots[v][s] is not None:
        raise InvalidGraph(f"slot {s + 1} of vertex {v} filled twice")
    slots[v][s] = src


class CanonicalGraph(NamedTuple):
    graph: DecoratedGraph
    sign: int


@dataclass
class ValidityReport:
    errors: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.errors

    def __bool__(self):
        return self.ok


def validate(g):
    """Check the structural rules of an A-graph; never raises."""
    errors = []
    n = g.n_vertices
    for v, (c, slots) in enumerate(zip(g.colors, g.inputs)):
        if c not in (BLACK, WHITE):
            errors.append(f"arity: vertex {v} has unknown colour {c!r}")
        elif c == WHITE and not (len(slots) == 1 or len(slots) >= 3):
            errors.append(f"arity: white vertex {v} has in_arity {len(slots)}")
    consumed = [0] * n
    labels = []
    for slots in g.inputs:
        for src in slots:
            if src >= 0:
                if src >= n:
                    errors.append(f"slot: source {src} out of range")
                else:
                    consumed[src] += 1
            else:
                labels.append(-src)
    for v in g.out_legs:
        if 0 <= v < n:
            consumed[v] += 1
        else:
            errors.append(f"slot: out-leg source {v} out of range")
    for v, k in enumerate(consumed):
        if k != 1:
            errors.append(f"slot: output of vertex {v} consumed {k} times")
    if sorted(labels) != list(range(1, len(labels) + 1)):
        errors.append(f"labels: in-leg labels {sorted(labels)} are not 1..n")
    for w, slots in enumerate(g.inputs):
        if g.colors[w] != BLACK:
            continue
        for src in slots:
            if 0 <= src < n and g.colors[src] == BLACK and not g.inputs[src]:
                errors.append(f"a-graph: univalent black {src} feeds black {w}")
    return ValidityReport(errors)


def violates_a_rule(g):
    """True when some univalent black vertex feeds a black vertex."""
    colors, inputs = g.colors, g.inputs
    for w, slots in enumerate(inputs):
        if colors[w] == BLACK:
            for src in slots:
                if src >= 0 and colors[src] == BLACK and not inputs[src]:
                    return True
    return False


def black_parity(order, colors):
    """Parity (+1/-1) of the permutation induced on black vertices.

    ``order`` lists old vertex ids in their new positions.
    """
    seq = [v for v in order if colors[v] == BLACK]
    sign = 1
    seen = [False] * len(colors)
    pos = {v: i for i, v in enumerate(sorted(seq))}
    perm = [pos[v] for v in seq]
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class _Canonizer:
    """One-shot canonical labelling of a connected functional graph."""

    def __init__(self, g):
        self.g = g
        self.code = {}
        self.blacks = {}
        self.slot_order = {}
        self.flips = 0
        self.zero = False
        self.mark = {}

    def vertex_code(self, v):
        if v in self.code:
            return self.code[v]
        g = self.g
        slots = g.inputs[v]
        kids = []
        nb = 1 if g.colors[v] == BLACK else 0
        for s, src in enumerate(slots):
            if self.mark.get(v) == s:
                kids.append(_MARK)
            elif src < 0:
                kids.append((0, -src))
            else:
                kids.append(self.vertex_code(src))
                nb += self.blacks[src]
        n = len(slots)
        idx = list(range(n))
        if g.colors[v] == BLACK:
            idx.sort(key=lambda s: kids[s])
            self._check_swaps(v, idx, kids, range(n - 1))
        elif n >= 3:
            head = sorted(idx[: n - 3], key=lambda s: kids[s])
            a, b = idx[n - 2], idx[n - 1]
            if kids[a] > kids[b]:
                a, b = b, a
                self.flips += 1
            elif kids[a] == kids[b] and self._sub_blacks(v, a) % 2 == 0:
                self.zero = True
            idx = head + [idx[n - 3], a, b]
            self._check_swaps(v, idx, kids, range(max(n - 4, 0)))
        self.slot_order[v] = idx
        code = (2, _COLOR_CODE[g.colors[v]], n, tuple(kids[s] for s in idx))
        self.code[v] = code
        self.blacks[v] = nb
        return code

    def _sub_blacks(self, v, s):
        src = self.g.inputs[v][s]
        if src < 0 or self.mark.get(v) == s:
            return 0
        return self.blacks[src]

    def _check_swaps(self, v, idx, kids, positions):
        for i in positions:
            s, t = idx[i], idx[i + 1]
            if kids[s] == kids[t] and kids[s][0] == 2 and self._sub_blacks(v, s) % 2:
                self.zero = True

    def preorder(self, v, out):
        out.append(v)
        g = self.g
        for s in self.slot_order[v]:
            if self.mark.get(v) == s:
                continue
            src = g.inputs[v][s]
            if src >= 0:
                self.preorder(src, out)

    def run(self):
        g = self.g
        if not g.is_connected():
            raise Disconnected("canonical forms are defined for connected graphs")
        if len(g.out_legs) > 1:
            raise Disconnected("a connected graph has at most one outgoing leg")
        if g.out_legs:
            root = g.out_legs[0]
            self.vertex_code(root)
            order = []
            self.preorder(root, order)
        else:
            cycle = _find_cycle(g)
            L = len(cycle)
            for i, v in enumerate(cycle):
                prev = cycle[i - 1]
                self.mark[v] = g.inputs[v].index(prev) if L > 1 else g.inputs[v].index(v)
            codes = [self.vertex_code(v) for v in cycle]
            best = min(range(L), key=lambda r: codes[r:] + codes[:r])
            rotated = cycle[best:] + cycle[:best]
            rc = codes[best:] + codes[:best]
            for p in range(1, L):
                if L % p == 0 and rc[p:] + rc[:p] == rc:
                    block = sum(self.blacks[v] for v in rotated[:p])
                    if ((L // p - 1) * block) % 2:
                        self.zero = True
                    break
            order = []
            for v in rotated:
                self.preorder(v, order)
        return order


def _find_cycle(g):
    nxt = {}
    for w, slots in enumerate(g.inputs):
        for src in slots:
            if src >= 0:
                nxt[src] = w
    v = 0
    seen = {}
    path = []
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        if v not in nxt:
            raise InvalidGraph("graph without outgoing leg must contain a cycle")
        v = nxt[v]
    return path[seen[v]:]


def canonical_form(g, check=True):
    """Canonical representative of ``g`` and the sign relating the two.

    ``g == sign * graph`` in the cochain space; ``sign == 0`` when an
    automorphism reverses the orientation.
    """
    if check:
        report = validate(g)
        if not report:
            raise InvalidGraph("; ".join(report.errors))
    c = _Canonizer(g)
    order = c.run()
    if c.zero:
        sign = 0
    else:
        sign = black_parity(order, g.colors) * (-1) ** c.flips
    new = {old: i for i, old in enumerate(order)}
    inputs = []
    for old in order:
        slots = g.inputs[old]
        inputs.append(
            tuple(
                new[slots[s]] if slots[s] >= 0 else slots[s] for s in c.slot_order[old]
            )
        )
    graph = DecoratedGraph(
        tuple(g.colors[old] for old in order),
        tuple(inputs),
        tuple(new[v] for v in g.out_legs),
    )
    return CanonicalGraph(graph, sign)


G1, G2, G3, G4 = "G1", "G2", "G3", "G4"


def classify(g):
    if not g.is_connected():
        raise Disconnected("classify expects a connected graph")
    types = [(c, len(s)) for c, s in zip(g.colors, g.inputs)]
    if types == [(BLACK, 0)] and g.n_out == 1:
        return G1
    if all(a == 1 for _, a in types):
        return G2
    if all(c == BLACK and a >= 2 for c, a in types):
        return G3
    return G4


class Branch(NamedTuple):
    length: int
    alpha: str  # 'b', 'w' or 'leg'
    beta: str
    vertices: tuple  # bivalent black vertices in flow order
    start: tuple  # ('v', id) / ('leg', label): object feeding the first slot
    end: tuple  # ('slot', w, s) / ('out', label): where the last output goes


MARK_DEGREE = {"b": 0, "leg": 0, "w": 1}


def _is_bivalent_black(g, v):
    return g.colors[v] == BLACK and len(g.inputs[v]) == 1


def _mark_of_vertex(g, v):
    if g.colors[v] == WHITE:
        return "w"
    return "b"


def branches(g):
    """All branches (including zero-length ones) of a G4 graph.

    Composite white vertices must be expanded beforehand.
    """
    if classify(g) != G4:
        raise WrongSubcomplex("branches are defined on G4 graphs")
    if any(c == WHITE and len(s) == 1 for c, s in zip(g.colors, g.inputs)):
        raise WrongSubcomplex("expand composite white vertices first")
    tgt = {v: t[0] for v, t in g.targets().items()}
    result = []

    def follow(start, first_dest):
        chain = []
        dest = first_dest
        while dest[0] == "slot" and _is_bivalent_black(g, dest[1]):
            chain.append(dest[1])
            dest = tgt[dest[1]]
        if dest[0] == "out":
            beta = "leg"
        else:
            beta = _mark_of_vertex(g, dest[1])
        return chain, dest, beta

    for w, slots in enumerate(g.inputs):
        for s, src in enumerate(slots):
            if src < 0:
                if _is_bivalent_black(g, w):
                    chain, dest, beta = follow(("leg", -src), ("slot", w, s))
                    result.append(Branch(len(chain), "leg", beta, tuple(chain), ("leg", -src), dest))
                else:
                    result.append(Branch(0, "leg", _mark_of_vertex(g, w), (), ("leg", -src), ("slot", w, s)))
    for v in range(g.n_vertices):
        if _is_bivalent_black(g, v) or (g.colors[v] == BLACK and not g.inputs[v]):
            continue
        chain, dest, beta = follow(("v", v), tgt[v])
        result.append(Branch(len(chain), _mark_of_vertex(g, v), beta, tuple(chain), ("v", v), dest))
    return result
