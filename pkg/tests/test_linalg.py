from fractions import Fraction

import pytest

from qbvlab.linalg import (
    GradedComplex,
    MalformedComplex,
    SparseMatrix,
    cohomology_dims,
    euler_characteristic,
    kernel_basis,
    rank,
    rank_modp,
    verify_d_squared,
)


def test_rank_examples():
    assert rank(SparseMatrix.from_dense([[1, 2], [2, 4]])) == 1
    assert rank(SparseMatrix.zero(0, 0)) == 0
    assert rank(SparseMatrix.identity(5)) == 5


def test_rank_with_fractions_and_methods():
    m = SparseMatrix.from_dense([[Fraction(1, 2), 1, 0], [1, 2, 0], [0, 0, Fraction(3, 7)]])
    assert rank(m) == 2
    assert rank(m, "checked") == 2
    assert rank(m, "modp") == 2
    assert rank_modp(m, 1000003) == 2


def test_rank_unknown_method():
    with pytest.raises(ValueError):
        rank(SparseMatrix.identity(2), "float")


def test_sparse_matrix_drops_zeros_and_checks_range():
    m = SparseMatrix(2, 2, {(0, 0): 0, (1, 1): 3})
    assert m.entries == {(1, 1): Fraction(3)}
    with pytest.raises(IndexError):
        SparseMatrix(1, 1, {(1, 0): 1})


def test_matmul_and_sub():
    a = SparseMatrix.from_dense([[1, 2], [0, 1]])
    b = SparseMatrix.from_dense([[1, -2], [0, 1]])
    assert (a @ b - SparseMatrix.identity(2)).is_zero()
    with pytest.raises(ValueError):
        a @ SparseMatrix.identity(3)


def test_kernel_basis():
    m = SparseMatrix.from_dense([[1, 1, 0], [0, 1, 1]])
    (v,) = kernel_basis(m)
    assert v == [1, -1, 1]
    assert kernel_basis(SparseMatrix.identity(3)) == []


def test_cohomology_of_a_point():
    c = GradedComplex(("pt",), {0: ["x"]})
    assert cohomology_dims(c) == {0: 1}


def test_cohomology_single_step():
    # two copies of Q in degrees 0 and 1 each, d of rank one
    c = GradedComplex(("t",), {0: ["a", "b"], 1: ["c", "d"]},
                      {0: SparseMatrix.from_dense([[0, 1], [0, 0]])})
    assert cohomology_dims(c) == {0: 1, 1: 1}


def test_malformed_complex():
    c = GradedComplex(("bad",), {0: ["a"], 1: ["b"]}, {0: SparseMatrix.identity(2)})
    with pytest.raises(MalformedComplex):
        cohomology_dims(c)


def test_verify_d_squared():
    zero = GradedComplex(("z",), {0: ["a"], 1: ["b"]})
    assert verify_d_squared(zero)
    bad = GradedComplex(("b",), {0: ["a"], 1: ["b"], 2: ["c"]},
                        {0: SparseMatrix.from_dense([[1]]), 1: SparseMatrix.from_dense([[1]])})
    assert not verify_d_squared(bad)


def test_euler_characteristic():
    assert euler_characteristic({0: 2, 1: 1, -1: 3}) == 2 - 1 - 3
