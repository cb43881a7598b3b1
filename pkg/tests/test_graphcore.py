import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgraph.graphcore import (
    BLACK,
    G1,
    G2,
    G3,
    G4,
    WHITE,
    DecoratedGraph,
    Disconnected,
    InvalidGraph,
    WrongSubcomplex,
    black_parity,
    branches,
    canonical_form,
    classify,
    validate,
)
from strategies import any_graphs


def comb(n):
    # left comb with n-1 bivalent black vertices, legs 1..n
    inputs = [(i + 1 if i < n - 2 else -1, -(i + 2)) for i in range(n - 1)]
    return DecoratedGraph((BLACK,) * (n - 1), tuple(inputs), (0,))


def test_validate_accepts_comb():
    assert validate(comb(4)).ok


def test_validate_reports_bad_white_arity():
    g = DecoratedGraph((WHITE,), ((-1, -2),), (0,))
    report = validate(g)
    assert not report.ok
    assert any("arity" in e for e in report.errors)


def test_validate_reports_unconsumed_output():
    g = DecoratedGraph((BLACK, BLACK), ((-1,), (-2,)), (0,))
    assert any("consumed 0" in e for e in validate(g).errors)


def test_validate_reports_q0_into_black():
    g = DecoratedGraph((BLACK, BLACK), ((1,), ()), (0,))
    assert any("a-graph" in e for e in validate(g).errors)


def test_canonical_form_rejects_invalid():
    with pytest.raises(InvalidGraph):
        canonical_form(DecoratedGraph((WHITE,), ((-1, -2),), (0,)))


def test_classify_examples():
    assert classify(DecoratedGraph((BLACK,), ((),), (0,))) == G1
    loop = DecoratedGraph((WHITE, BLACK), ((1,), (0,)), ())
    assert classify(loop) == G2
    assert classify(comb(3)) == G3
    assert classify(DecoratedGraph((WHITE, BLACK, BLACK), ((-1, 1, 2), (), ()), (0,))) == G4


def test_classify_rejects_disconnected():
    g = DecoratedGraph((BLACK, BLACK), ((0,), (1,)), ())
    with pytest.raises(Disconnected):
        classify(g)


def test_black_parity():
    colors = (BLACK, WHITE, BLACK, BLACK)
    assert black_parity([0, 1, 2, 3], colors) == 1
    assert black_parity([2, 1, 0, 3], colors) == -1
    assert black_parity([1, 0, 2, 3], colors) == 1


def test_white_last_slots_are_antisymmetric():
    g = DecoratedGraph((WHITE, BLACK, BLACK), ((-1, 1, 2), (), ()), (0,))
    h = DecoratedGraph((WHITE, BLACK, BLACK), ((-1, 2, 1), (), ()), (0,))
    cg, sg = canonical_form(g)
    ch, sh = canonical_form(h)
    assert cg == ch
    assert sg == -sh


def test_composite_expansion_is_nonzero():
    # swapping the two univalent blacks is odd on blacks and odd on the slots
    g = DecoratedGraph((WHITE, BLACK, BLACK), ((-1, 1, 2), (), ()), (0,))
    assert canonical_form(g).sign != 0


def test_orientation_reversing_automorphism_gives_zero():
    # two-cycle of bivalent blacks: the swap is an odd permutation of blacks
    g = DecoratedGraph((BLACK, BLACK), ((1,), (0,)), ())
    assert canonical_form(g).sign == 0


def test_json_roundtrip_example():
    g = comb(4)
    assert DecoratedGraph.from_json(g.to_json()) == g


def test_from_json_rejects_unfilled_slot():
    data = comb(3).to_json()
    data["in_legs"].pop("1")
    with pytest.raises(InvalidGraph):
        DecoratedGraph.from_json(data)


def test_dot_export_mentions_every_vertex():
    dot = comb(3).to_dot()
    assert dot.startswith("digraph")
    assert "v0" in dot and "v1" in dot and "fillcolor=black" in dot


def test_branches_of_black_string():
    # leg -> bivalent black -> bivalent black -> white slot
    g = DecoratedGraph(
        (WHITE, BLACK, BLACK, BLACK, BLACK),
        ((1, 3, 4), (2,), (-1,), (), ()),
        (0,),
    )
    lengths = sorted((b.length, b.alpha, b.beta) for b in branches(g))
    assert (2, "leg", "w") in lengths
    assert (0, "w", "leg") in lengths


def test_branches_need_g4():
    with pytest.raises(WrongSubcomplex):
        branches(comb(3))


@settings(max_examples=150, deadline=None)
@given(any_graphs(), st.data())
def test_canonical_form_is_invariant_under_reordering(g, data):
    order = data.draw(st.permutations(range(g.n_vertices)))
    h = g.reorder(list(order))
    cg, sg = canonical_form(g)
    ch, sh = canonical_form(h)
    assert cg == ch
    assert sh == sg * black_parity(list(order), g.colors)


@settings(max_examples=150, deadline=None)
@given(any_graphs())
def test_canonical_form_is_idempotent(g):
    cg, sg = canonical_form(g)
    again, s2 = canonical_form(cg)
    assert again == cg
    assert s2 == (1 if sg else 0)


@settings(max_examples=100, deadline=None)
@given(any_graphs(), st.data())
def test_black_slot_permutations_do_not_change_the_class(g, data):
    slots = [list(s) for s in g.inputs]
    for v, c in enumerate(g.colors):
        if c == BLACK:
            slots[v] = list(data.draw(st.permutations(slots[v])))
    h = DecoratedGraph(g.colors, tuple(tuple(s) for s in slots), g.out_legs)
    assert canonical_form(g) == canonical_form(h)


@settings(max_examples=100, deadline=None)
@given(any_graphs())
def test_json_roundtrip(g):
    assert DecoratedGraph.from_json(g.to_json()) == g
