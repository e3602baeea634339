# tests/test_gradedpair.py
from fractions import Fraction

import pytest

from app.core.gradedpair import (
    ExteriorElement,
    GradedVS,
    Grading,
    HomogeneousElement,
    TriGradedElement,
    contract,
    contraction_identity_battery,
    ev_matrix,
    ev_q,
    is_signed_permutation,
    pair,
    serre_pair,
    serre_sign,
)


def test_wedge_is_graded_commutative():
    e0 = ExteriorElement.monomial(2, [0])
    e1 = ExteriorElement.monomial(2, [1])
    assert e0.wedge(e1) == -(e1.wedge(e0))
    assert e0.wedge(e0).is_zero()
    assert ExteriorElement.monomial(3, [1, 0]) == ExteriorElement.monomial(3, [0, 1], -1)


def test_full_contraction_pairs_dual_bases():
    form = ExteriorElement.monomial(3, [0, 2])
    assert pair(form, ExteriorElement.monomial(3, [0, 2])) == 1
    assert pair(form, ExteriorElement.monomial(3, [0, 1])) == 0
    partial = contract(ExteriorElement.monomial(3, [0]), form)
    assert partial == ExteriorElement.monomial(3, [2])


def test_ev_q_carries_degree_sign():
    space = GradedVS(Grading.Z, {1: 1, -1: 1})
    v = HomogeneousElement(1, (Fraction(1),))
    w = HomogeneousElement(-1, (Fraction(3),))
    assert ev_q(space, v, w) == -3
    assert ev_q(space, v, HomogeneousElement(1, (Fraction(1),))) == 0


@pytest.mark.parametrize("grading, dims", [
    (Grading.Z, {-2: 1, 0: 2, 3: 1}),
    (Grading.Z2, {0: 2, 1: 3}),
    (Grading.Z2, {0: 1, 3: 1}),
])
def test_ev_is_perfect(grading, dims):
    assert is_signed_permutation(ev_matrix(GradedVS(grading, dims)))


def test_z2_grading_folds_degrees():
    space = GradedVS(Grading.Z2, {0: 1, 2: 1, 3: 1})
    assert space.dim(0) == 2
    assert space.dim(1) == 1


@pytest.mark.parametrize("i, p2, q2, expected", [
    (0, 1, 1, 1),
    (1, 0, 0, -1),
    (1, 1, 0, 1),
    (2, 1, 0, 1),
    (3, 1, 1, -1),
])
def test_serre_sign_table(i, p2, q2, expected):
    assert serre_sign(i, p2, q2) == expected


def test_serre_pair_on_curve():
    space = GradedVS(Grading.Z, {1: 1, -1: 1})
    first = TriGradedElement(1, ExteriorElement.monomial(2, [0]), HomogeneousElement(1, (Fraction(1),)))
    second = TriGradedElement(1, ExteriorElement.monomial(2, [1]), HomogeneousElement(-1, (Fraction(1),)))
    result = serre_pair(space, first, second)
    assert (result.p, result.q) == (1, 1)
    assert result.form == ExteriorElement.monomial(2, [0, 1])


def test_serre_pair_vanishes_off_degree():
    space = GradedVS(Grading.Z, {1: 1, -1: 1})
    v = HomogeneousElement(1, (Fraction(1),))
    first = TriGradedElement(1, ExteriorElement.monomial(2, [0]), v)
    second = TriGradedElement(1, ExteriorElement.monomial(2, [1]), v)
    assert serre_pair(space, first, second).form.is_zero()


def test_mixed_bidegree_is_rejected():
    mixed = ExteriorElement.monomial(2, [0]) + ExteriorElement.monomial(2, [1])
    with pytest.raises(ValueError):
        TriGradedElement(1, mixed, HomogeneousElement(0, (Fraction(1),)))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_reduced_contraction_identity(d):
    assert all(check.holds for check in contraction_identity_battery(d))


def test_reduced_contraction_identity_with_scaled_volume():
    assert all(check.holds for check in contraction_identity_battery(2, Fraction(-5, 2)))
