from fractions import Fraction

import pytest

from qbvlab import qbv
from qbvlab.bv import C, E, LabelError
from qbvlab.qbv import QElement, QU, make_poly, make_u


def P(labels, **exps):
    return make_poly(C(labels), {int(k[1:]) if k[1:].isdigit() else k[1:]: v for k, v in exps.items()})


def test_degree_and_weight():
    c3 = make_poly(C((1, 2, 3)))
    assert (qbv.q_degree(c3), qbv.q_weight(c3)) == (0, 0)
    u = QU(1, 1, 2)
    assert (qbv.q_degree(u), qbv.q_weight(u)) == (1, 2)
    assert (qbv.q_degree(make_poly(C((1, 2, 3, 4)), {1: 1})), qbv.q_weight(make_poly(C((1, 2, 3, 4)), {1: 1}))) == (0, 0)
    assert (qbv.q_degree(make_poly(C((1, 2, 3, 4)))), qbv.q_weight(make_poly(C((1, 2, 3, 4))))) == (2, 2)


def test_differential_examples():
    x = make_poly(C((1, 2, 3)), {1: 1})
    assert qbv.diff_basis(x) == {make_poly(E((1, 2, 3), 1, 2)): 1, make_poly(E((1, 2, 3), 1, 3)): 1}
    assert qbv.diff_basis(make_poly(C((1, 2, 3)))) == {}
    y = make_poly(C((1, 2, 3, 4)), {1: 2, 2: 1})
    assert qbv.q_diff(qbv.q_diff(QElement.basis(y))).is_zero()


def test_transposition_signs():
    swap = {1: 2, 2: 1}
    s, u = make_u(2, 1, 2)
    assert qbv.q_relabel(QElement.basis(u), swap) == QElement.basis(u, -1)
    s, u = make_u(1, 1, 2)
    assert qbv.q_relabel(QElement.basis(u), swap) == QElement.basis(u)
    x = make_poly(C((1, 2, 3)), {1: 1})
    assert qbv.q_relabel(QElement.basis(x), {1: 2, 2: 1, 3: 3}) == QElement.basis(make_poly(C((1, 2, 3)), {2: 1}))


def test_unit_transposition_sign_default():
    assert qbv.tau_sign(0) == -1
    assert qbv.tau_sign(1) == 1 and qbv.tau_sign(2) == -1


def test_binary_u_u_is_minus_product():
    got = qbv.compose2_basis(QU(1, "x", "a"), "a", QU(1, "b", "y"), "b")
    assert got == {QU(2, "x", "y"): -1}


def test_binary_poly_u():
    x = make_poly(C((1, 2, "a")), {"a": 2})
    got = qbv.compose2_basis(x, "a", QU(2, "b", "z"), "b")
    assert got == {make_poly(C((1, 2, "z"))): 2}
    # power too high for the exponent
    assert qbv.compose2_basis(make_poly(C((1, 2, "a")), {"a": 1}), "a", QU(2, "b", "z"), "b") == {}


def test_binary_poly_poly():
    got = qbv.compose2_basis(make_poly(C((1, 2, "a"))), "a", make_poly(C(("b", 3, 4))), "b")
    want = {make_poly(E((1, 2, 3, 4), k, l)): 1 for k in (1, 2) for l in (3, 4)}
    assert got == want
    # nonzero power at a slot kills it
    assert qbv.compose2_basis(make_poly(C((1, 2, "a")), {"a": 1}), "a", make_poly(C(("b", 3, 4))), "b") == {}


def test_binary_graded_symmetry():
    x = make_poly(E((1, 2, "a"), 1, "a"), {"a": 1, 2: 1})
    u = QU(1, "b", "z")
    xy = qbv.compose2_basis(x, "a", u, "b")
    yx = qbv.compose2_basis(u, "b", x, "a")
    sign = (-1) ** (qbv.q_degree(x) * qbv.q_degree(u))
    assert xy and yx == {k: sign * v for k, v in xy.items()}


def test_ternary_examples():
    got = qbv.compose3_basis(make_poly(C((1, 2, "a"))), "a", QU(1, "b1", "b2"), "b1", "b2",
                             make_poly(C(("c", 3, 4))), "c")
    assert got == {make_poly(C((1, 2, 3, 4))): 1}
    assert qbv.compose3_basis(make_poly(C((1, 2, "a"))), "a", QU(0, "b1", "b2"), "b1", "b2",
                              make_poly(C(("c", 3, 4))), "c") == {}
    assert qbv.compose3_basis(make_poly(E((1, 2, "a"), 1, 2)), "a", QU(1, "b1", "b2"), "b1", "b2",
                              make_poly(E(("c", 3, 4), 3, 4)), "c") == {}


def test_ternary_middle_slot_order():
    # reading u^n from the other end contributes exactly the transposition sign
    x = make_poly(C((1, 2, "a")), {"a": 1})
    z = make_poly(C(("c", 3, 4)), {"c": 1})
    for n in (1, 2, 3, 4):
        fwd = qbv.compose3_basis(x, "a", QU(n, "b1", "b2"), "b1", "b2", z, "c")
        bwd = qbv.compose3_basis(x, "a", QU(n, "b1", "b2"), "b2", "b1", z, "c")
        assert bwd == {k: qbv.tau_sign(n) * v for k, v in fwd.items()}


def test_ternary_coefficient():
    x = make_poly(C((1, 2, "a")), {"a": 2})
    z = make_poly(C(("c", 3, 4)), {"c": 1, 3: 1})
    got = qbv.compose3_basis(x, "a", QU(4, "b1", "b2"), "b1", "b2", z, "c")
    # single term j = 2: 2! * 1!, sign (-1)^(0 + 4 - 1 - 2)
    assert got == {make_poly(C((1, 2, 3, 4)), {3: 1}): -2}


def test_label_error():
    with pytest.raises(LabelError):
        qbv.compose2_basis(make_poly(C((1, 2, 3))), 9, QU(1, "b", "z"), "b")


def test_homotopy_relations_small_sweep():
    rep = qbv.verify_homotopy_relations(6, 2, 3)
    assert rep.passed, rep.lines()
    assert all(rep.checked[a] > 0 for a in (1, 2, 3, 4, 5))


def test_literal_unit_sign_breaks_relations(literal_unit_sign):
    # with u^0 fixed by the transposition the relations fail already at small bounds
    rep = qbv.verify_homotopy_relations(4, 1, 1, arities=(3, 4))
    assert not rep.passed


def test_relation_tuples_cover_both_orderings():
    n0 = sum(1 for _ in qbv.iter_relation_tuples(3, 5, 1, 1, patterns=(0,)))
    n01 = sum(1 for _ in qbv.iter_relation_tuples(3, 5, 1, 1))
    assert n01 == 2 * n0
