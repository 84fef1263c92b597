from fractions import Fraction
from itertools import permutations

import pytest

from qbvlab import psi


def test_lambda_of():
    assert psi.lambda_of((2, 1)) == (0, 0, 1)
    assert psi.lambda_of((0, 0, 3)) == (2, 2, 2)
    assert psi.lambda_of((4, 0, 1)) == (0, 0, 0, 0, 2)


def test_tau_bracket_values():
    assert psi.tau_bracket((3,)) == 1
    assert psi.tau_bracket((2, 1)) == 0
    assert psi.tau_bracket((3, 1)) == 1
    # <tau_0^4 tau_2> = 2!/2! and <tau_0^3 tau_1^2> = 2!
    assert psi.tau_bracket((4, 0, 1)) == 1
    assert psi.tau_bracket((3, 2)) == 2


def test_tau_bracket_needs_three_points():
    with pytest.raises(ValueError):
        psi.tau_bracket((2,))
    assert psi.bracket((2,)) == 0


def test_multi_index_helpers():
    assert psi.normalize((1, 0, 0)) == (1,)
    assert psi.add_taus((1,), 2, 0) == (2, 0, 1)
    assert psi.mi_factorial((2, 3)) == 12
    assert sorted(psi.splittings((1, 1))) == sorted([((), (1, 1)), ((1,), (0, 1)), ((0, 1), (1,)), ((1, 1), ())])
    with pytest.raises(ValueError):
        psi.normalize((1, -1))


def test_recursion_examples():
    assert psi.check_recursion_asym(0, 0, 0, (0,))
    assert psi.check_recursion_asym(1, 0, 0, (2,))
    assert psi.check_recursion_sym(0, 0, (1,))
    assert psi.check_recursion_sym(0, 1, (2, 1))
    with pytest.raises(ValueError):
        psi.check_recursion_sym(0, 0, (0, 1))


def test_symmetric_identity_from_asymmetric():
    for a, b, j in [(0, 0, (1,)), (1, 2, (3, 1)), (2, 0, (2, 0, 1))]:
        lhs, rhs = psi.sym_identity_via_asym(a, b, j)
        assert lhs == rhs


def test_multi_indices_enumeration():
    got = list(psi.multi_indices(2, 1))
    assert sorted(got) == sorted([(0, 2), (1, 1), (2,)])


def test_p_polynomial_small():
    assert psi.p_polynomial(3).render() == "1"
    assert psi.p_polynomial(4).render() == "-(v1+v2+v3+v4)"
    p5 = psi.p_polynomial(5)
    assert p5.coefficient({1: 2}) == Fraction(1, 2)
    assert p5.coefficient({1: 1, 2: 1}) == 2
    with pytest.raises(ValueError):
        psi.p_polynomial(2)


def test_p_polynomial_json():
    js = psi.p_polynomial(4).to_json()
    assert js["terms"][0] == {"exponents": [1, 0, 0, 0], "coeff": "-1"}
    assert len(js["terms"]) == 4


def test_p_polynomial_two_constructions_agree():
    for n in range(3, 7):
        assert psi.p_polynomial(n) == psi.p_polynomial_by_permutations(n)


def test_p_polynomial_symmetric_and_homogeneous():
    for n in range(3, 7):
        p = psi.p_polynomial(n)
        assert p.is_homogeneous(n - 3)
        for perm in list(permutations(range(1, n + 1)))[:30]:
            assert p.relabel(dict(zip(range(1, n + 1), perm))) == p


def test_p_identity_examples():
    assert psi.check_p_identity((1, 2, 3), 1, 2)
    for i, j in [(1, 2), (1, 4), (3, 4)]:
        assert psi.check_p_identity((1, 2, 3, 4), i, j)
    with pytest.raises(ValueError):
        psi.check_p_identity((1, 2, 3), 1, 1)


def test_p_identity_labels_need_not_be_integers():
    assert psi.check_p_identity(("a", "b", "c", "d", "e"), "b", "e")
