import pytest

from qbvlab import bv
from qbvlab.bv import C, E, BVElement, LabelError


def el(x, c=1):
    return BVElement.basis(x, c)


def test_c_composition():
    assert bv.compose_basis(C((1, 2, "a")), "a", C(("b", 3, 4)), "b") == {C((1, 2, 3, 4)): 1}


def test_e_at_an_index_slot():
    got = bv.compose_basis(E((1, 2), 1, 2), 2, C(("b", 3, 4)), "b")
    assert got == {E((1, 3, 4), 1, 3): 1, E((1, 3, 4), 1, 4): 1}


def test_e_at_an_unrelated_slot():
    got = bv.compose_basis(E((1, 2, "k"), 1, 2), "k", C(("b", 4, 5)), "b")
    assert got == {E((1, 2, 4, 5), 1, 2): 1}


def test_e_at_unrelated_slot_is_forced_by_associativity():
    # Delta o (c o c) against (Delta o c) o c
    left = bv.bv_compose(el(bv.delta(1, "p")), "p",
                         bv.bv_compose(el(C(("q", 2, "k"))), "k", el(C(("b", 4, 5))), "b"), "q")
    right = bv.bv_compose(bv.bv_compose(el(bv.delta(1, "p")), "p", el(C(("q", 2, "k"))), "q"),
                          "k", el(C(("b", 4, 5))), "b")
    assert left == right
    assert not left.is_zero()


def test_odd_with_odd_truncates():
    assert bv.compose_basis(E((1, 2, "a"), 1, 2), "a", E(("b", 3, 4), 3, 4), "b") == {}
    assert bv.compose_basis(bv.delta(1, "a"), "a", bv.delta("b", 2), "b") == {}


def test_unit_relabels():
    x = E((1, 2, 3), 1, 3)
    assert bv.compose_basis(bv.one("u", "a"), "a", x, 1) == {E(("u", 2, 3), "u", 3): 1}
    assert bv.compose_basis(x, 3, bv.one("b", "w"), "b") == {E((1, 2, "w"), 1, "w"): 1}


def test_label_errors():
    with pytest.raises(LabelError):
        bv.compose_basis(C((1, 2, 3)), 9, C((4, 5, 6)), 4)
    with pytest.raises(LabelError):
        bv.compose_basis(C((1, 2, 3)), 1, C((2, 5, 6)), 5)


def test_relabel_examples():
    x = el(E((1, 2, 3), 1, 2))
    assert bv.bv_relabel(x, {1: 2, 2: 1, 3: 3}) == x
    assert bv.bv_relabel(x, {1: 1, 2: 2, 3: 3}) == x
    c = el(C((1, 2, 3)))
    assert bv.bv_relabel(c, {1: 2, 2: 3, 3: 1}) == c
    with pytest.raises(LabelError):
        bv.bv_relabel(c, {1: 2, 2: 2, 3: 1})


def test_degree_and_weight():
    assert (bv.bv_weight(bv.delta(1, 2)), bv.bv_degree(bv.delta(1, 2))) == (2, -1)
    assert (bv.bv_weight(C((1, 2, 3))), bv.bv_degree(C((1, 2, 3)))) == (0, 0)
    assert (bv.bv_weight(E((1, 2, 3), 1, 3)), bv.bv_degree(E((1, 2, 3), 1, 3))) == (2, -1)


def test_render_and_kinds():
    assert C((3, 1, 2)).render() == "c{1,2,3}"
    assert E((1, 2, 3), 3, 1).render() == "E{1,2,3;1,3}"
    assert bv.delta(1, 2).kind == "Delta" and bv.one(1, 2).kind == "One"
    assert len(list(bv.bv_basis((1, 2, 3, 4)))) == 1 + 6


def test_insert_delta_and_zero_differential():
    assert bv.insert_delta(C((1, 2, 3)), 1) == {E((1, 2, 3), 1, 2): 1, E((1, 2, 3), 1, 3): 1}
    assert bv.insert_delta(E((1, 2, 3), 1, 2), 3) == {}
    assert bv.bv_diff(el(C((1, 2, 3)))).is_zero()


def test_invalid_basis():
    with pytest.raises(ValueError):
        E((1, 2, 3), 1, 1)
    with pytest.raises(ValueError):
        bv.BVBasis(frozenset((1,)))
