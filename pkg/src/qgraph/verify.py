"""Verification suites shared by the command line and the test-suite.

Each suite returns a list of check records ``{name, expected, actual, status}``
with status one of "pass", "fail" or "skipped".
"""

from __future__ import annotations

from math import factorial

from .cochain import Cochain
from .cocycles import c_graph, pi, psi
from .complex import coboundary, coboundary_d0, laplacian
from .enumeration import LimitExceeded, enumerate_basis, g4_basis, sector_basis
from .graphcore import G2, G3
from .homology import betti, in_relation_span, rank
from .superalg import (
    a_class,
    bc_class,
    evaluate_graph,
    is_exact,
    killing_form,
    primitive_ce_class,
    q_from_lie,
)


def check(name, expected, actual, ok=None):
    if ok is None:
        ok = expected == actual
    return {"name": name, "expected": expected, "actual": actual,
            "status": "pass" if ok else "fail"}


def skipped(name, reason):
    return {"name": name, "expected": None, "actual": reason, "status": "skipped"}


def _guard(name, fn):
    try:
        return fn()
    except LimitExceeded as exc:
        return skipped(name, str(exc))


def black_graphs(max_vertices, max_in=3):
    """Connected black-only graphs with up to ``max_vertices`` vertices."""
    for v in range(1, max_vertices + 1):
        for n in range(max_in + 1):
            for m in (0, 1):
                yield from enumerate_basis(n, m, v)


def g2_graphs(max_vertices, max_in=2):
    for deg in range(1, max_vertices + 1):
        for n in range(max_in + 1):
            for m in (0, 1):
                yield from sector_basis(G2, n, m, deg)


def suite_d2zero(max_vertices=5, max_g2=8):
    def run_black():
        bad = sum(1 for g in black_graphs(max_vertices) if coboundary(coboundary(g)))
        return check(f"d^2 = 0 on black graphs with <= {max_vertices} vertices", 0, bad)

    def run_g2():
        bad = sum(1 for g in g2_graphs(max_g2) if coboundary(coboundary(g)))
        return check(f"d^2 = 0 on G2 graphs of degree <= {max_g2}", 0, bad)

    return [_guard("d2zero black", run_black), _guard("d2zero G2", run_g2)]


def g4_graphs(max_vertices, max_in=2):
    for v in range(1, max_vertices + 1):
        for n in range(max_in + 1):
            for m in (0, 1):
                yield from g4_basis(n, m, v)


def laplacian_failures(graphs):
    """Counts of (non-diagonal, d0^2 != 0, zero eigenvalue on a nonzero class)."""
    nondiag = d2 = zero = 0
    for g in graphs:
        try:
            lam, _ = laplacian(g)
        except AssertionError:
            nondiag += 1
            continue
        if coboundary_d0(coboundary_d0(g)):
            d2 += 1
        if lam == 0 and not in_relation_span(Cochain.from_graph(g), shadows=True):
            zero += 1
    return nondiag, d2, zero


def suite_laplacian(max_vertices=5):
    def run():
        got = laplacian_failures(g4_graphs(max_vertices))
        return check(f"Laplacian diagonal, d0^2 = 0, eigenvalue >= 1 on G4 (<= {max_vertices} vertices)",
                     [0, 0, 0], list(got))

    return [_guard("laplacian", run)]


def suite_dims(max_n=4):
    out = []
    for n in range(2, max_n + 1):
        name = f"dim H^{n - 1}(G3, in={n}, out=1)"
        out.append(_guard(name, lambda n=n, name=name: check(
            name, factorial(n - 1), betti(G3, n, 1, n - 1))))
    for n in range(2, min(max_n, 3) + 1):
        name = f"dim H^{n}(G3, in={n}, out=0)"
        out.append(_guard(name, lambda n=n, name=name: check(
            name, factorial(n - 1), betti(G3, n, 0, n))))
    return out


def suite_psi_pi(max_n=2):
    out = []
    for n in range(1, max_n + 1):
        k = 2 * n - 1
        out.append(check(f"d Psi_{k} = Pi_{k}", "equal",
                         "equal" if coboundary(psi(n)) == pi(n) else "different"))
    return out


def suite_lie_example(lie):
    Q = q_from_lie(lie)
    c1 = bc_class("C", 1, lie)
    c2 = bc_class("C", 2, lie)
    kf = killing_form(lie)
    kt = {(a, b): kf[a][b] for a in range(lie.dim) for b in range(lie.dim)}
    c2_const = {k: fn.terms.get((), 0) for k, fn in c2.components.items() if fn}
    c2_matrix = {(lo[0], lo[1]): v for (lo, _), v in c2_const.items()}
    killing_nonzero = {k: v for k, v in kt.items() if v}
    out = [
        check("Q^2 = 0", True, Q.square_zero()),
        check("C1 = 0", True, not c1),
        check("C2 = Killing form", True, c2_matrix == killing_nonzero),
        check("C2 nondegenerate", lie.dim, rank([dict(enumerate(row)) for row in kf])),
        check("C2 not exact", False, is_exact(c2, lie)[0]),
        check("evaluate(c_graph(2)) = C2", True,
              evaluate_graph(Cochain.from_graph(*c_graph(2)), lie) == c2),
        check("A1 = 0", True, not a_class(1, lie)),
        check("A2 = 0", True, not a_class(2, lie)),
    ]
    ce = primitive_ce_class(3, lie)
    out.append(check("CE3 nonzero", True, bool(ce)))
    out.append(check("CE3 closed", True, not Q(ce)))
    return out


SUITES = ("d2zero", "laplacian", "dims", "psi-pi", "lie-example")
