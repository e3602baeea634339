# tests/test_bulk.py
from fractions import Fraction

import pytest

from app.core.bulk import (
    LGPair,
    TraceBackend,
    bulk_gram,
    bulk_trace,
    critical_locus_finite,
    eliminant,
    frobenius_check,
    hessian_class,
    ideal_check,
    is_local,
    jacobian_ideal,
    koszul_cohomology_truncated,
    milnor_algebra,
    scaling_check,
    socle,
)
from app.core.exceptions import NotLocal
from app.core.groebner import make_ring

from tests.conftest import trace_for


def _pair(variables, builder):
    R = make_ring(variables)
    return LGPair(builder(*R.gens))


SUITE = [
    (["x"], lambda x: x**2, 1),
    (["x"], lambda x: x**3, 2),
    (["x"], lambda x: x**5, 4),
    (["x", "y"], lambda x, y: x**2 + y**2, 1),
    (["x", "y"], lambda x, y: x * y, 1),
    (["x", "y"], lambda x, y: x**3 + y**3, 4),
    (["x", "y"], lambda x, y: x**3 + y**4, 6),
    (["x", "y", "z"], lambda x, y, z: x**2 + y**2 + z**2, 1),
]


@pytest.mark.parametrize("variables, builder, mu", SUITE)
def test_milnor_number(variables, builder, mu):
    finite, value = critical_locus_finite(jacobian_ideal(_pair(variables, builder)))
    assert finite
    assert value == mu


def test_non_isolated_critical_locus():
    finite, mu = critical_locus_finite(jacobian_ideal(_pair(["x", "y"], lambda x, y: x**2 * y)))
    assert not finite
    assert mu is None


def test_constant_potential_is_rejected():
    R = make_ring(["x"])
    with pytest.raises(ValueError):
        LGPair(R.one * 3)


def test_cubic_gram_matrix(ring_x):
    _, x = ring_x
    ma, tr = trace_for(x**3)
    assert ma.labels() == ["1", "x"]
    assert tr.covector == (0, Fraction(1, 3))
    gram = bulk_gram(ma, tr)
    assert gram.matrix.to_strings() == [["0", "1/3"], ["1/3", "0"]]
    assert gram.determinant == Fraction(-1, 9)
    assert gram.symmetric


def test_quadratic_gram_matrix(ring_x):
    _, x = ring_x
    ma, tr = trace_for(x**2)
    assert bulk_gram(ma, tr).matrix.to_strings() == [["1/2"]]


def test_hessian_class_and_socle(ring_x):
    _, x = ring_x
    ma, _ = trace_for(x**3)
    assert hessian_class(ma) == (0, 6)
    assert socle(ma) == [(0, 1)]
    assert is_local(ma)


@pytest.mark.parametrize("variables, builder, mu", SUITE)
@pytest.mark.parametrize("backend", list(TraceBackend))
def test_trace_is_frobenius_and_nondegenerate(variables, builder, mu, backend):
    ma = milnor_algebra(jacobian_ideal(_pair(variables, builder)))
    tr = bulk_trace(ma, backend, Fraction(1))
    assert tr(hessian_class(ma)) == mu
    assert bulk_gram(ma, tr).nondegenerate
    assert frobenius_check(ma, tr)
    assert ideal_check(ma, tr)


def test_backends_agree_on_local_algebra():
    ma = milnor_algebra(jacobian_ideal(_pair(["x", "y"], lambda x, y: x**3 + y**4)))
    residue = bulk_trace(ma, TraceBackend.RESIDUE, Fraction(1))
    socle_trace = bulk_trace(ma, TraceBackend.SOCLE, Fraction(1))
    assert residue.covector == socle_trace.covector


@pytest.mark.parametrize("scale", [Fraction(2), Fraction(-3), Fraction(1, 5)])
def test_volume_scaling_law(ring_x, scale):
    _, x = ring_x
    ma, tr = trace_for(x**4)
    assert scaling_check(ma, TraceBackend.RESIDUE, scale)
    scaled = bulk_trace(ma, TraceBackend.RESIDUE, scale)
    assert scaled.covector == tuple(c * scale * scale for c in tr.covector)


def test_several_critical_points(ring_x):
    _, x = ring_x
    ma = milnor_algebra(jacobian_ideal(LGPair(x**3 - 3 * x)))
    assert ma.dimension == 2
    assert not is_local(ma)
    assert eliminant(ma, 0) == x**2 - 1
    with pytest.raises(NotLocal):
        bulk_trace(ma, TraceBackend.SOCLE, Fraction(1))
    tr = bulk_trace(ma, TraceBackend.RESIDUE, Fraction(1))
    assert bulk_gram(ma, tr).nondegenerate


def test_koszul_cohomology_of_cubic(ring_x):
    _, x = ring_x
    result = koszul_cohomology_truncated(LGPair(x**3), 10)
    assert result.stabilized
    assert result.negative_vanishes
    assert result.cohomology[0] == 2


def test_koszul_cohomology_of_fermat_cubic():
    result = koszul_cohomology_truncated(_pair(["x", "y"], lambda x, y: x**3 + y**3))
    assert result.stabilized
    assert result.negative_vanishes
    assert result.cohomology[0] == 4


def test_koszul_detects_non_isolated_locus():
    result = koszul_cohomology_truncated(_pair(["x", "y"], lambda x, y: x**2 * y), 8)
    assert result.cohomology.get(-1, 0) > 0
    assert not result.negative_vanishes


def test_koszul_bound_below_degree(ring_x):
    _, x = ring_x
    with pytest.raises(ValueError):
        koszul_cohomology_truncated(LGPair(x**3), 2)
