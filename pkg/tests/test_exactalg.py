# tests/test_exactalg.py
from fractions import Fraction

import pytest

from app.core.exactalg import (
    MatrixPolyUni,
    MatrixQ,
    divides,
    nullspace,
    rref,
    smith_normal_form,
    solve,
)
from app.core.groebner import make_ring


def test_rref_of_rank_one_matrix():
    result = rref(MatrixQ.from_rows([[1, 2], [2, 4]]))
    assert result.rank == 1
    assert result.pivots == (0,)
    assert result.nullspace == ((Fraction(-2), Fraction(1)),)
    assert result.reduced == MatrixQ.from_rows([[1, 2], [0, 0]])


def test_rref_transform_reproduces_reduced_form():
    m = MatrixQ.from_rows([[0, 3, 1], [2, 1, 0], [4, 5, 1]])
    result = rref(m)
    assert result.transform @ m == result.reduced


def test_nullspace_vectors_are_killed():
    m = MatrixQ.from_rows([[1, 1, 1, 0], [0, 1, 2, 1]])
    basis = nullspace(m)
    assert len(basis) == 2
    for v in basis:
        assert all(c == 0 for c in m.apply(v))


def test_determinant_and_inverse_are_exact():
    m = MatrixQ.from_rows([[Fraction(1, 2), 1], [1, 3]])
    assert m.det() == Fraction(1, 2)
    assert m @ m.inverse() == MatrixQ.identity(2)


def test_solve_detects_inconsistent_system():
    m = MatrixQ.from_rows([[1, 2], [2, 4]])
    assert solve(m, [1, 2]) is not None
    assert solve(m, [1, 3]) is None


def test_to_strings_keeps_rationals_exact():
    assert MatrixQ.from_rows([[Fraction(1, 3), 0]]).to_strings() == [["1/3", "0"]]


def test_shape_mismatch_is_rejected():
    with pytest.raises(ValueError):
        MatrixQ.identity(2) @ MatrixQ.identity(3)


@pytest.fixture
def qx():
    return make_ring(["x"])


def test_smith_form_of_diagonal_factorization_matrix(qx):
    x = qx.gens[0]
    m = MatrixPolyUni.from_rows(qx, [[x, 1], [0, x**2]])
    snf = smith_normal_form(m)
    assert snf.u @ m @ snf.v == snf.d
    assert snf.invariant_factors == [qx.one, x**3]
    assert snf.rank == 2


def test_smith_form_divisibility_chain(qx):
    x = qx.gens[0]
    m = MatrixPolyUni.from_rows(qx, [[x**2, 0], [0, x]])
    factors = smith_normal_form(m).invariant_factors
    assert factors == [x, x**2]
    assert divides(factors[0], factors[1])


def test_smith_transforms_are_mutually_inverse(qx):
    x = qx.gens[0]
    m = MatrixPolyUni.from_rows(qx, [[x**2 - 1, x + 1, 0], [x, 2, x**3]])
    snf = smith_normal_form(m)
    assert snf.u @ m @ snf.v == snf.d
    assert snf.u @ snf.u_inv == MatrixPolyUni.identity(qx, 2)
    assert snf.v_inv @ snf.v == MatrixPolyUni.identity(qx, 3)
    assert all(f.LC == 1 for f in snf.invariant_factors)


def test_smith_form_of_zero_matrix_has_rank_zero(qx):
    snf = smith_normal_form(MatrixPolyUni.zeros(qx, 2, 3))
    assert snf.rank == 0
    assert snf.d.is_zero()


def test_smith_matrices_need_one_variable():
    with pytest.raises(ValueError):
        MatrixPolyUni.zeros(make_ring(["x", "y"]), 1, 1)
