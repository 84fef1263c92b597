from fractions import Fraction

import pytest

from qbvlab.feyn import complexes as cx
from qbvlab.feyn.canon import PLAIN, DecGraph, canonicalize
from qbvlab.feyn.phi import (
    compare_cohomology,
    edge_image,
    leg_chain_ratios,
    phi_image,
    phi_matrix,
    verify_phi,
    verify_phiE_truncated,
)


def _tree(k):
    return DecGraph(2, ((0, 1, PLAIN, PLAIN, k),),
                    ((0, PLAIN, 0), (0, PLAIN, 0), (1, PLAIN, 0), (1, PLAIN, 0)))


def _target(a, b):
    return canonicalize(DecGraph(2, ((0, 1, (0, a), (0, b), (1,)),),
                                 ((0, PLAIN, 0), (0, PLAIN, 0), (1, PLAIN, 0), (1, PLAIN, 0))), cx.AFEYN)


def test_bare_edge_goes_to_single_u():
    c, s = _target(0, 0)
    assert phi_image(_tree(0)) == {c: s}


def test_one_delta_edge():
    (c1, s1), (c0, s0) = _target(1, 0), _target(0, 1)
    assert phi_image(_tree(1)) == {c1: s1, c0: -s0}


def test_leg_normalizations():
    g = DecGraph(1, (), ((0, PLAIN, 2), (0, PLAIN, 0), (0, PLAIN, 0)))
    fac = phi_image(g)
    lit = phi_image(g, "literal")
    (k,) = fac
    assert fac[k] == Fraction(1, 2) and lit[k] == 1
    with pytest.raises(ValueError):
        phi_image(g, "other")


def test_phi_03_is_identity():
    m = phi_matrix(0, 3, 0)
    assert m.shape == (1, 1) and m.entries == {(0, 0): 1}


@pytest.mark.parametrize("g,n", [(0, 3), (0, 4), (1, 1), (1, 2), (0, 5)])
@pytest.mark.parametrize("W", [0, 2])
def test_verify_phi_small(g, n, W):
    rep = verify_phi(g, n, W)
    assert rep.chain_map and rep.weight and rep.quasi_iso


@pytest.mark.parametrize("g,n", [(0, 4), (1, 2)])
def test_verify_phi_into_full_model(g, n):
    for W in (0, 2):
        assert verify_phi(g, n, W, model="full").passed


def test_both_leg_normalizations_agree_below_weight_four():
    # at W <= 2 a leg carries at most one Delta and 1/1! = 1
    for W in (0, 2):
        assert verify_phi(1, 2, W, "literal").passed


def test_leg_chain_ratios_decide_the_normalization():
    assert len(set(leg_chain_ratios(6, "factorial"))) == 1
    assert leg_chain_ratios(6, "literal") == [Fraction(k) for k in range(1, 7)]


def test_compare_examples():
    c = compare_cohomology(0, 3, 0)
    assert c.source == c.target == {0: 1} and c.equal
    assert compare_cohomology(1, 1, 0).equal
    c = compare_cohomology(1, 2, 2)
    assert c.equal and c.source == {3: 1}
    assert c.source_euler == c.target_euler
    assert "EQUAL" in c.render()
    with pytest.raises(ValueError):
        compare_cohomology(0, 2, 0)
    with pytest.raises(ValueError):
        compare_cohomology(0, 4, 4)


def test_phiE_small_truncations():
    r1 = verify_phiE_truncated(1)
    assert r1.passed and r1.strata == {0: 1}
    r3 = verify_phiE_truncated(3)
    assert r3.passed and set(r3.strata) == {0, 1, 2}
    with pytest.raises(ValueError):
        verify_phiE_truncated(0)


def test_edge_image_two():
    img = edge_image(2)
    assert sorted(abs(v) for v in img.values()) == [Fraction(1, 2), Fraction(1, 2), Fraction(1)]
