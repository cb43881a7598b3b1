"""Formal rational combinations of canonical graphs."""

from __future__ import annotations

import json
from fractions import Fraction

from .graphcore import DecoratedGraph, canonical_form


def format_rational(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s):
    return Fraction(s)


class Cochain:
    """Sparse map canonical graph -> nonzero Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for g, c in dict(terms).items():
                self.add(g, c)

    @classmethod
    def from_graph(cls, g, coeff=1):
        c = cls()
        c.add(g, coeff)
        return c

    def add(self, g, coeff=1, canonical=False):
        """Add ``coeff * g``; ``g`` is canonicalised unless flagged."""
        if not coeff:
            return self
        if canonical:
            key, sign = g, 1
        else:
            key, sign = canonical_form(g, check=False)
        if sign == 0:
            return self
        val = self.terms.get(key, 0) + Fraction(coeff) * sign
        if val:
            self.terms[key] = val
        else:
            self.terms.pop(key, None)
        return self

    def iadd(self, other, scale=1):
        for g, c in other.terms.items():
            self.add(g, c * scale, canonical=True)
        return self

    def __add__(self, other):
        return self.copy().iadd(other)

    def __sub__(self, other):
        return self.copy().iadd(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, k):
        k = Fraction(k)
        out = Cochain()
        if k:
            out.terms = {g: c * k for g, c in self.terms.items()}
        return out

    __rmul__ = __mul__

    def copy(self):
        out = Cochain()
        out.terms = dict(self.terms)
        return out

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Cochain) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.items())

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: graph_key(kv[0]))

    def coefficient(self, g):
        key, sign = canonical_form(g, check=False)
        return self.terms.get(key, Fraction(0)) * sign

    def gradings(self):
        return {g.grading for g in self.terms}

    def __repr__(self):
        parts = [f"{format_rational(c)}*{graph_key(g)}" for g, c in self.items()]
        return "Cochain(" + " + ".join(parts) + ")"

    def to_json(self):
        grad = sorted(self.gradings())
        return {
            "grading": [{"degree": k, "n_in": n, "m_out": m} for k, n, m in grad],
            "terms": [[g.to_json(), format_rational(c)] for g, c in self.items()],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        out = cls()
        for gj, c in data["terms"]:
            out.add(DecoratedGraph.from_json(gj), parse_rational(c))
        return out


def graph_key(g):
    """Deterministic sort key for graphs."""
    return (g.n_vertices, g.colors, g.inputs, g.out_legs)
