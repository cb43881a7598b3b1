"""Tensor calculus on the odd vector space PiL of a Lie algebra L.

All coordinates c^a are odd, so functions on PiL form the exterior algebra
on c^0 .. c^{d-1}.  The homological vector field is Q = 1/2 c^b c^a f_ab^d d/dc^d.
Tensors carry their function coefficients on the left of the basis elements
dc^a (lower) and d/dc^b (upper), all of which are odd.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from importlib import resources
from itertools import product


class JacobiFailure(ValueError):
    pass


class StructureConstantError(ValueError):
    pass


class ParityMismatch(ValueError):
    pass


class SlotMismatch(ValueError):
    pass


class WhiteVertexPresent(ValueError):
    """White vertices evaluate to zero for a flat connection; pass zero_whites=True to allow."""


class NotACocycle(ValueError):
    pass


def perm_sign(seq):
    """Sign of the permutation sorting ``seq`` (distinct items)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# --- functions on PiL -------------------------------------------------------


class SuperFunction:
    """Element of the exterior algebra: sorted index tuple -> Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for mono, c in (terms or {}).items():
            self._add(tuple(mono), Fraction(c))

    def _add(self, mono, c):
        if len(set(mono)) != len(mono):
            return
        s = perm_sign(mono)
        key = tuple(sorted(mono))
        val = self.terms.get(key, 0) + s * c
        if val:
            self.terms[key] = val
        else:
            self.terms.pop(key, None)

    @classmethod
    def constant(cls, c):
        return cls({(): c}) if c else cls()

    @classmethod
    def generator(cls, a):
        return cls({(a,): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SuperFunction.constant(other)
        return isinstance(other, SuperFunction) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = SuperFunction()
        out.terms = dict(self.terms)
        for m, c in other.terms.items():
            out._add(m, c)
        return out

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SuperFunction):
            k = Fraction(other)
            out = SuperFunction()
            if k:
                out.terms = {m: c * k for m, c in self.terms.items()}
            return out
        out = SuperFunction()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out._add(m1 + m2, c1 * c2)
        return out

    def __rmul__(self, k):
        return self * k

    def degrees(self):
        return {len(m) for m in self.terms}

    def parity(self):
        """Parity of a homogeneous function; raises on mixed parity."""
        ps = {len(m) % 2 for m in self.terms}
        if len(ps) > 1:
            raise ParityMismatch("function is not parity-homogeneous")
        return ps.pop() if ps else 0

    def split_parity(self):
        even, odd = SuperFunction(), SuperFunction()
        for m, c in self.terms.items():
            (odd if len(m) % 2 else even).terms[m] = c
        return even, odd

    def derivative(self, a):
        """Left derivative d/dc^a."""
        out = SuperFunction()
        for m, c in self.terms.items():
            if a in m:
                i = m.index(a)
                out._add(m[:i] + m[i + 1:], c * (-1) ** i)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(f"c{a}" for a in m) or "1"
            parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def to_json(self):
        return [[list(m), f"{c.numerator}/{c.denominator}"] for m, c in sorted(self.terms.items())]


ZERO = SuperFunction()


# --- Lie algebras -----------------------------------------------------------


class LieAlgebraData:
    """Structure constants f[a, b, c] = f_ab^c of [t_a, t_b] = f_ab^c t_c."""

    def __init__(self, dim, f, parities=None, name=None, check=True):
        self.dim = int(dim)
        self.name = name
        self.parities = tuple(parities) if parities is not None else (0,) * self.dim
        if len(self.parities) != self.dim:
            raise StructureConstantError("one parity per generator is required")
        if any(self.parities):
            raise ParityMismatch("only ordinary Lie algebras (all generators even) are supported")
        self.f = {}
        for (a, b, c), v in dict(f).items():
            v = Fraction(v)
            if not all(0 <= i < self.dim for i in (a, b, c)):
                raise StructureConstantError(f"index out of range in {(a, b, c)}")
            if v:
                self.f[(a, b, c)] = v
        if check:
            self.check()

    def const(self, a, b, c):
        return self.f.get((a, b, c), Fraction(0))

    def check(self):
        d = self.dim
        for (a, b, c), v in self.f.items():
            if self.const(b, a, c) != -v:
                raise StructureConstantError(f"f is not antisymmetric at {(a, b, c)}")
        for a in range(d):
            for b in range(a + 1, d):
                for c in range(b + 1, d):
                    for t in range(d):
                        s = sum(
                            self.const(x, y, e) * self.const(e, z, t)
                            for x, y, z in ((a, b, c), (b, c, a), (c, a, b))
                            for e in range(d)
                        )
                        if s:
                            raise JacobiFailure(
                                f"Jacobi identity fails for generators {(a, b, c)} (component {t})"
                            )

    def ad(self, a):
        """Matrix of ad_{t_a}: ad[d][e] = f_ae^d."""
        d = self.dim
        return [[self.const(a, e, r) for e in range(d)] for r in range(d)]

    def to_json(self):
        return {
            "dim": self.dim,
            "parities": list(self.parities),
            "f": [[a, b, c, f"{v.numerator}/{v.denominator}"] for (a, b, c), v in sorted(self.f.items())],
        }

    @classmethod
    def from_json(cls, data, name=None, check=True):
        if isinstance(data, str):
            data = json.loads(data)
        f = {(a, b, c): Fraction(v) for a, b, c, v in data["f"]}
        return cls(data["dim"], f, data.get("parities"), name or data.get("name"), check)

    def __repr__(self):
        return f"LieAlgebraData({self.name or 'L'}, dim={self.dim})"


BUILTINS = ("abelian", "affine2", "heisenberg3", "sl2", "sl3", "so3")


def abelian(d):
    return LieAlgebraData(d, {}, name=f"abelian{d}")


def builtin(name):
    """Load a shipped Lie algebra; ``abelianN`` gives the N-dimensional abelian one."""
    if name.startswith("abelian"):
        return abelian(int(name[len("abelian"):] or 1))
    if name not in BUILTINS:
        raise KeyError(f"unknown Lie algebra {name!r}; choose from {', '.join(BUILTINS)}")
    text = resources.files("qgraph.data").joinpath(f"{name}.json").read_text()
    return LieAlgebraData.from_json(text, name=name)


def load_lie(source):
    """A built-in name or a path to a Lie algebra JSON file."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return LieAlgebraData.from_json(fh.read(), name=source)
    return builtin(os.path.basename(source).removesuffix(".json"))


# --- tensors ----------------------------------------------------------------


class SuperTensor:
    """Tensor of type (p, q): components[(lowers, uppers)] -> SuperFunction."""

    def __init__(self, dim, p, q, components=None):
        self.dim, self.p, self.q = dim, p, q
        self.components = {}
        for key, fn in (components or {}).items():
            self.add(key, fn)

    def add(self, key, fn):
        lowers, uppers = key
        if len(lowers) != self.q or len(uppers) != self.p:
            raise SlotMismatch(f"component {key} does not match type ({self.p},{self.q})")
        if not isinstance(fn, SuperFunction):
            fn = SuperFunction.constant(fn)
        key = (tuple(lowers), tuple(uppers))
        val = self.components.get(key, ZERO) + fn
        if val:
            self.components[key] = val
        else:
            self.components.pop(key, None)

    def __getitem__(self, key):
        lowers, uppers = key
        return self.components.get((tuple(lowers), tuple(uppers)), ZERO)

    @classmethod
    def scalar(cls, dim, fn):
        return cls(dim, 0, 0, {((), ()): fn})

    def keys(self):
        return product(product(range(self.dim), repeat=self.q), product(range(self.dim), repeat=self.p))

    def _same_type(self, other):
        if (self.dim, self.p, self.q) != (other.dim, other.p, other.q):
            raise SlotMismatch("tensors of different type")

    def __add__(self, other):
        self._same_type(other)
        out = SuperTensor(self.dim, self.p, self.q, self.components)
        for k, v in other.components.items():
            out.add(k, v)
        return out

    def __mul__(self, k):
        return SuperTensor(self.dim, self.p, self.q, {key: v * k for key, v in self.components.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, SuperTensor)
            and (self.dim, self.p, self.q) == (other.dim, other.p, other.q)
            and self.components == other.components
        )

    def __bool__(self):
        return bool(self.components)

    def is_zero(self):
        return not self.components

    def degrees(self):
        return set().union(*[fn.degrees() for fn in self.components.values()]) if self.components else set()

    def permute_lower(self, perm):
        """Tensor whose slot i holds old slot perm[i] (0-based), with the Koszul sign."""
        if sorted(perm) != list(range(self.q)):
            raise SlotMismatch(f"{perm} does not permute {self.q} lower slots")
        sign = perm_sign(perm)
        out = SuperTensor(self.dim, self.p, self.q)
        for (lo, up), fn in self.components.items():
            new = [None] * self.q
            for i, j in enumerate(perm):
                new[i] = lo[j]
            out.add((tuple(new), up), fn * sign)
        return out

    def __repr__(self):
        return f"SuperTensor(type=({self.p},{self.q}), nnz={len(self.components)})"

    def to_json(self):
        return {
            "type": [self.p, self.q],
            "components": [
                [list(lo), list(up), fn.to_json()] for (lo, up), fn in sorted(self.components.items())
            ],
        }


# --- the homological vector field -------------------------------------------


class OddVectorField:
    """Odd vector field X = X^d d/dc^d on PiL, acting from the left."""

    def __init__(self, lie, components):
        self.lie = lie
        self.dim = lie.dim
        self.components = list(components)

    def __call__(self, fn):
        out = SuperFunction()
        for d, xd in enumerate(self.components):
            if xd:
                out = out + xd * fn.derivative(d)
        return out

    def as_tensor(self):
        return SuperTensor(self.dim, 1, 0, {((), (d,)): x for d, x in enumerate(self.components)})

    def is_zero(self):
        return not any(self.components)

    def square(self):
        """Components of Q^2 = 1/2 [Q, Q], that is Q(Q^d)."""
        return [self(x) for x in self.components]

    def square_zero(self):
        return not any(self.square())

    def linear_part(self):
        """M[d][e] = d/dc^e Q^d, the matrix of Lambda = nabla Q for the flat connection."""
        return [[self.components[d].derivative(e) for e in range(self.dim)] for d in range(self.dim)]


def q_from_lie(lie):
    """Q^d = 1/2 c^b c^a f_ab^d."""
    comps = [SuperFunction() for _ in range(lie.dim)]
    for (a, b, d), v in lie.f.items():
        comps[d] = comps[d] + SuperFunction({(b, a): v / 2})
    Q = OddVectorField(lie, comps)
    if not Q.square_zero():
        raise JacobiFailure("Q does not square to zero")
    return Q


def _graded_scale(fn, s):
    """Multiply the odd part of ``fn`` by s and keep the even part."""
    even, odd = fn.split_parity()
    return even + odd * s


def lie_derivative(Q, T):
    """delta T = L_Q T, computed componentwise.

    For a component function F on a product of odd basis elements,
    L_Q(F e_1 ... e_r) = Q(F) e + (-1)^|F| F sum_i e_1 .. L_Q(e_i) .. e_r, and
    the signs from moving the odd coefficient of L_Q(e_i) to the front cancel.
    L_Q d/dc^b = M^d_b d/dc^d and L_Q dc^a = -M^a_e dc^e.
    """
    if T.dim != Q.dim:
        raise ParityMismatch("tensor and vector field live on different spaces")
    M = Q.linear_part()
    out = SuperTensor(T.dim, T.p, T.q)
    d = T.dim
    for (lo, up), fn in T.components.items():
        out.add((lo, up), Q(fn))
        sfn = _graded_scale(fn, -1)
        for i in range(T.q):
            for e in range(d):
                m = M[lo[i]][e]
                if m:
                    new = lo[:i] + (e,) + lo[i + 1:]
                    out.add((new, up), -(sfn * m))
        for i in range(T.p):
            for e in range(d):
                m = M[e][up[i]]
                if m:
                    new = up[:i] + (e,) + up[i + 1:]
                    out.add((lo, new), sfn * m)
    return out


# --- (1,1) tensors as matrices ---------------------------------------------


def endomorphism(dim, matrix):
    """(1,1) tensor with components matrix[upper][lower]."""
    t = SuperTensor(dim, 1, 1)
    for u in range(dim):
        for l in range(dim):
            fn = matrix[u][l]
            if not isinstance(fn, SuperFunction):
                fn = SuperFunction.constant(fn)
            if fn:
                t.add(((l,), (u,)), fn)
    return t


def as_matrix(T):
    if (T.p, T.q) != (1, 1):
        raise SlotMismatch("expected a (1,1) tensor")
    return [[T[((l,), (u,))] for l in range(T.dim)] for u in range(T.dim)]


def compose(A, B):
    """Matrix product (A B)^d_e = A^d_f B^f_e of (1,1) tensors."""
    a, b = as_matrix(A), as_matrix(B)
    d = A.dim
    out = [[SuperFunction() for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for k in range(d):
            if not a[i][k]:
                continue
            for j in range(d):
                if b[k][j]:
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return endomorphism(d, out)


def supertrace(T):
    """Str T = sum_i (-1)^{e_i} T^i_i; every c^i is odd so this is -sum_i T^i_i."""
    if (T.p, T.q) != (1, 1):
        raise SlotMismatch("supertrace needs exactly one upper and one lower slot")
    out = SuperFunction()
    for i in range(T.dim):
        out = out - T[((i,), (i,))]
    return out


def identity(dim):
    return endomorphism(dim, [[1 if i == j else 0 for j in range(dim)] for i in range(dim)])


def lambda_tensor(Q):
    return endomorphism(Q.dim, Q.linear_part())


# --- closed-form classes ----------------------------------------------------


def a_class(n, lie):
    """Str(Lambda^{4n-3}) for the flat connection (R = 0)."""
    Q = q_from_lie(lie)
    lam = lambda_tensor(Q)
    power = lam
    for _ in range(4 * n - 4):
        power = compose(power, lam)
    out = supertrace(power)
    assert not Q(out), "a_class must be closed"
    return out


def _ad_product(lie, idx):
    m = identity(lie.dim)
    mats = [endomorphism(lie.dim, lie.ad(a)) for a in idx]
    for x in mats:
        m = compose(m, x)
    return as_matrix(m)


def primitive_ce_class(k, lie):
    """tr(ad_a1 ... ad_ak) c^a1 ... c^ak."""
    Q = q_from_lie(lie)
    out = SuperFunction()
    for idx in product(range(lie.dim), repeat=k):
        if len(set(idx)) < k:
            continue
        m = _ad_product(lie, idx)
        tr = sum((m[i][i].terms.get((), 0) for i in range(lie.dim)), Fraction(0))
        if tr:
            out = out + SuperFunction({idx: tr})
    assert not Q(out), "primitive class must be closed"
    return out


def bc_class(series, n, lie, perm=None):
    """B_n = (ad_a1 ... ad_an)^b_{a_{n+1}} or C_n = tr(ad_a1 ... ad_an).

    ``perm`` gives, for each formula index a_1, a_2, ..., the 1-based tensor
    slot it occupies; the default is the identity.
    """
    d = lie.dim
    if series == "B":
        slots = n + 1
        T = SuperTensor(d, 1, slots)
        for idx in product(range(d), repeat=slots):
            m = _ad_product(lie, idx[:n])
            for b in range(d):
                v = m[b][idx[n]]
                if v:
                    T.add((idx, (b,)), v)
    elif series == "C":
        slots = n
        T = SuperTensor(d, 0, slots)
        for idx in product(range(d), repeat=slots):
            m = _ad_product(lie, idx)
            tr = sum((m[i][i].terms.get((), 0) for i in range(d)), Fraction(0))
            if tr:
                T.add((idx, ()), tr)
    else:
        raise ValueError("series must be 'B' or 'C'")
    if perm is not None:
        T = T.permute_lower(_inverse([p - 1 for p in perm]))
    assert not lie_derivative(q_from_lie(lie), T), "B/C classes must be closed"
    return T


def _inverse(perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def killing_form(lie):
    return [[sum(lie.const(a, e, r) * lie.const(b, r, e) for e in range(lie.dim) for r in range(lie.dim))
             for b in range(lie.dim)] for a in range(lie.dim)]


# --- graph evaluation -------------------------------------------------------


def _koszul_sign(parities, order):
    """Sign of rearranging symbols with the given parities into ``order``."""
    sign = 1
    seq = list(order)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j] and parities[seq[i]] and parities[seq[j]]:
                sign = -sign
    return sign


def _vertex_values(Q, arity, cache):
    """value[(slots, out)] = d/dc^{s_1} ... d/dc^{s_n} Q^out (nonzero entries only)."""
    if arity in cache:
        return cache[arity]
    vals = {}
    for out in range(Q.dim):
        base = Q.components[out]
        for slots in product(range(Q.dim), repeat=arity):
            fn = base
            for s in reversed(slots):
                fn = fn.derivative(s)
                if not fn:
                    break
            if fn:
                vals[(slots, out)] = fn
    cache[arity] = vals
    return vals


def _graph_sign(g):
    """Koszul sign bringing the vertex symbols into evaluation order.

    Vertex v contributes [F_v, dc^{slot_1} .. dc^{slot_n}, d/dc^{out}].  The
    symbols are rearranged into: all F_v (vertex order), then one pair
    (dc, d/dc) per internal edge, evaluated as dc^a(d/dc^b) = delta, then the
    leg 1-forms by label, then the output vector.
    """
    par = []
    sym = {}
    for v, srcs in enumerate(g.inputs):
        sym[("F", v)] = len(par)
        par.append(len(srcs) % 2)
        for s in range(len(srcs)):
            sym[("lo", v, s)] = len(par)
            par.append(1)
        sym[("up", v)] = len(par)
        par.append(1)
    order = [sym[("F", v)] for v in range(g.n_vertices)]
    legs = []
    for v, srcs in enumerate(g.inputs):
        for s, src in enumerate(srcs):
            if src >= 0:
                order += [sym[("lo", v, s)], sym[("up", src)]]
            else:
                legs.append((-src, sym[("lo", v, s)]))
    order += [i for _, i in sorted(legs)]
    order += [sym[("up", v)] for v in g.out_legs]
    return _koszul_sign(par, order)


def evaluate_graph(c, lie_or_q, zero_whites=False):
    """Evaluate a black-vertex graph or cochain on PiL with the flat connection.

    A black vertex of in_arity n becomes the n-th derivative of Q, edges
    contract an output with an input slot, and legs become free slots
    (in-legs ordered by label, then the out-leg).
    """
    from .cochain import Cochain
    from .graphcore import WHITE, DecoratedGraph

    Q = lie_or_q if isinstance(lie_or_q, OddVectorField) else q_from_lie(lie_or_q)
    if isinstance(c, DecoratedGraph):
        c = [(c, Fraction(1))]
    elif isinstance(c, Cochain):
        c = c.items()
    else:
        c = [(c.graph, Fraction(c.sign))]
    result = None
    cache = {}
    for g, coeff in c:
        T = SuperTensor(Q.dim, g.n_out, g.n_in)
        if WHITE in g.colors:
            if not zero_whites:
                raise WhiteVertexPresent("white vertices evaluate to 0 for a flat connection")
        else:
            T = _evaluate_one(g, Q, cache) * coeff
        result = T if result is None else result + T
    if result is None:
        raise ValueError("cannot evaluate an empty cochain without a grading")
    return result


def _evaluate_one(g, Q, cache):
    sign = _graph_sign(g)
    d = Q.dim
    n_legs = g.n_in
    edges = [(v, s, src) for v, srcs in enumerate(g.inputs) for s, src in enumerate(srcs) if src >= 0]
    vals = [_vertex_values(Q, len(srcs), cache) for srcs in g.inputs]
    T = SuperTensor(d, g.n_out, n_legs)
    for internal in product(range(d), repeat=len(edges)):
        # index carried by each vertex output along internal edges
        out_idx = {}
        ok = True
        for (v, s, src), i in zip(edges, internal):
            if out_idx.setdefault(src, i) != i:
                ok = False
                break
        if not ok:
            continue
        free_out = [v for v in g.out_legs if v not in out_idx]
        for legs in product(range(d), repeat=n_legs):
            for outs in product(range(d), repeat=len(free_out)):
                oi = dict(out_idx)
                oi.update(zip(free_out, outs))
                fn = SuperFunction.constant(sign)
                for v, srcs in enumerate(g.inputs):
                    slots = tuple(oi[src] if src >= 0 else legs[-src - 1] for src in srcs)
                    val = vals[v].get((slots, oi[v]))
                    if val is None:
                        fn = None
                        break
                    fn = fn * val
                    if not fn:
                        break
                if fn:
                    T.add((legs, tuple(oi[v] for v in g.out_legs)), fn)
    return T


# --- exactness ----------------------------------------------------------------


def _monomials(d, k):
    from itertools import combinations

    return list(combinations(range(d), k))


def is_exact(T, lie_or_q):
    """Solve delta S = T exactly.  Returns (True, S) or (False, None).

    S ranges over all tensors of T's type whose coefficients have
    polynomial degree one less than T's.
    """
    from .homology import solve

    Q = lie_or_q if isinstance(lie_or_q, OddVectorField) else q_from_lie(lie_or_q)
    if isinstance(T, SuperFunction):
        T = SuperTensor(Q.dim, 0, 0, {((), ()): T})
    if lie_derivative(Q, T):
        raise NotACocycle("tensor is not delta-closed")
    if not T:
        return True, SuperTensor(T.dim, T.p, T.q)
    degrees = {k - 1 for k in T.degrees() if k >= 1}
    if not degrees:
        return False, None
    unknowns = []
    cols = []
    keys = {}
    all_keys = [(lo, up) for lo in product(range(T.dim), repeat=T.q)
                for up in product(range(T.dim), repeat=T.p)]
    for lo, up in all_keys:
        for k in sorted(degrees):
            for mono in _monomials(T.dim, k):
                S = SuperTensor(T.dim, T.p, T.q, {(lo, up): SuperFunction({mono: 1})})
                img = lie_derivative(Q, S)
                col = {}
                for key, fn in img.components.items():
                    for m, v in fn.terms.items():
                        col[keys.setdefault((key, m), len(keys))] = v
                unknowns.append((lo, up, mono))
                cols.append(col)
    target = {}
    for key, fn in T.components.items():
        for m, v in fn.terms.items():
            if (key, m) not in keys:
                return False, None
            target[keys[(key, m)]] = v
    sol = solve(cols, target)
    if sol is None:
        return False, None
    S = SuperTensor(T.dim, T.p, T.q)
    for i, v in sol.items():
        lo, up, mono = unknowns[i]
        S.add((lo, up), SuperFunction({mono: v}))
    return True, S
