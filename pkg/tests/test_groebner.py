# tests/test_groebner.py
"""Tests for Groebner bases, normal forms and ideal membership"""
import pytest

from app.core.exceptions import NotInIdeal, NotZeroDimensional
from app.core.groebner import (
    MonomialOrder,
    buchberger,
    format_monomial,
    format_poly,
    in_ideal,
    lift_membership,
    make_ring,
    normal_form,
    pure_power_bounds,
    standard_monomials,
)


def test_lex_basis_eliminates_x():
    R = make_ring(["x", "y"], MonomialOrder.LEX)
    x, y = R.gens
    gb = buchberger([x**2 + 2*x*y**2, x*y + 2*y**3 - 1])
    assert len(gb) == 2
    assert gb.leading_monomials == [(0, 3), (1, 0)]
    assert 2 * gb.generators[0] == 2*y**3 - 1
    assert gb.generators[1] == x


def test_grlex_basis_leading_terms():
    R = make_ring(["x", "y"], MonomialOrder.GRLEX)
    x, y = R.gens
    gb = buchberger([x**3 - 2*x*y, x**2*y + x - 2*y**2])
    assert sorted(gb.leading_monomials) == [(0, 2), (1, 1), (2, 0)]
    assert in_ideal(x**2, gb)
    assert in_ideal(2*y**2 - x, gb)


def test_normal_form_is_unique_remainder():
    R = make_ring(["x", "y"], MonomialOrder.LEX)
    x, y = R.gens
    gb = buchberger([x, 2*y**3 - 1])
    assert 2 * normal_form(y**4, gb) == y
    assert not in_ideal(y, gb)


def test_unit_ideal_is_detected():
    R = make_ring(["x"])
    x = R.gens[0]
    assert buchberger([x, x + 1]).is_unit_ideal()


def test_lift_membership_reconstructs_element():
    R = make_ring(["x", "y"])
    x, y = R.gens
    generators = [3*x**2, 3*y**2]
    f = x**3 * y + 5 * y**2
    cofactors = lift_membership(f, generators)
    assert sum((c * g for c, g in zip(cofactors, generators)), R.zero) == f


def test_lift_membership_rejects_outsiders():
    R = make_ring(["x", "y"])
    x, y = R.gens
    with pytest.raises(NotInIdeal):
        lift_membership(x * y, [x**2, y**2])


def test_standard_monomials_of_fermat_cubic_jacobian():
    R = make_ring(["x", "y"])
    x, y = R.gens
    gb = buchberger([3*x**2, 3*y**2])
    assert sorted(standard_monomials(gb)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert pure_power_bounds(gb) == [2, 2]


def test_non_isolated_ideal_has_no_pure_powers():
    R = make_ring(["x", "y"])
    x, y = R.gens
    with pytest.raises(NotZeroDimensional):
        pure_power_bounds(buchberger([2*x*y, x**2]))


def test_formatting_uses_caret_powers():
    R = make_ring(["x", "y"])
    x, y = R.gens
    assert format_poly(x**2 * y) == "x^2*y"
    assert format_monomial((2, 1), ["x", "y"]) == "x^2*y"
    assert format_monomial((0, 0), ["x", "y"]) == "1"
