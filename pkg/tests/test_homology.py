# tests/test_homology.py
import random

import pytest

from app.core.exceptions import InvalidSupport, InvariantViolation, PreconditionFailed
from app.core.exactalg import MatrixQ
from app.core.homology import (
    DoubleComplex,
    FiniteComplex,
    cohomology,
    cohomology_dims,
    dual_complex,
    filtered_compare,
    identity_morphism,
    spectral_pages,
    support_condition,
    total_complex,
)
from app.core.homology.generators import (
    quasi_isomorphic_inclusion,
    random_complex,
    random_double_complex,
    violating_inclusion,
)


@pytest.fixture
def corner():
    """K^{0,0} = Q mapping onto K^{0,1} and into K^{1,0} = Q²"""
    return DoubleComplex(
        nodes={(0, 0): 1, (0, 1): 1, (1, 0): 2},
        d1={(0, 0): MatrixQ.from_rows([[1]])},
        d2={(0, 0): MatrixQ.from_rows([[1], [0]])},
    ).validate()


def test_cohomology_of_short_exact_pieces():
    c = FiniteComplex.from_dict({0: 1, 1: 2, 2: 1}, {
        0: MatrixQ.from_rows([[1], [0]]),
        1: MatrixQ.from_rows([[0, 1]]),
    }).validate()
    assert cohomology_dims(c) == {0: 0, 1: 0, 2: 0}
    assert c.euler_characteristic() == 0


def test_cohomology_projection_sends_representatives_to_units():
    c = FiniteComplex.from_dict({0: 2, 1: 1}, {0: MatrixQ.from_rows([[1, 1]])})
    groups = cohomology(c)
    assert groups[0].dimension == 1
    assert groups[1].dimension == 0
    rep = groups[0].representatives[0]
    assert groups[0].coordinates(rep) == (1,)


def test_differential_squared_must_vanish():
    c = FiniteComplex.from_dict({0: 1, 1: 1, 2: 1}, {
        0: MatrixQ.from_rows([[1]]),
        1: MatrixQ.from_rows([[1]]),
    })
    with pytest.raises(InvariantViolation):
        c.validate()


def test_dual_complex_reverses_degrees():
    c = FiniteComplex.from_dict({1: 1, 2: 3}, {1: MatrixQ.from_rows([[1], [0], [0]])})
    dims = cohomology_dims(c)
    dual = cohomology_dims(dual_complex(c))
    assert dims == {1: 0, 2: 2}
    assert dual == {-2: 2, -1: 0}


def test_finite_duality_on_random_complexes():
    rng = random.Random(7)
    for _ in range(20):
        c = random_complex(rng, length=rng.randint(1, 4), start=rng.randint(-2, 2))
        dims = cohomology_dims(c)
        dual = cohomology_dims(dual_complex(c))
        assert all(dual.get(-k, 0) == n for k, n in dims.items())


def test_total_complex_of_corner(corner):
    assert cohomology_dims(total_complex(corner)) == {0: 0, 1: 2}


@pytest.mark.parametrize("p0, q0", [(0, 0), (1, 0), (-1, 2)])
def test_total_differential_squares_to_zero_on_commuting_square(p0, q0):
    K = DoubleComplex(
        nodes={(p0, q0): 1, (p0, q0 + 1): 1, (p0 + 1, q0): 1, (p0 + 1, q0 + 1): 1},
        d1={(p0, q0): MatrixQ.from_rows([[1]]), (p0 + 1, q0): MatrixQ.from_rows([[1]])},
        d2={(p0, q0): MatrixQ.from_rows([[1]]), (p0, q0 + 1): MatrixQ.from_rows([[1]])},
    ).validate()
    tot = total_complex(K)
    n = p0 + q0
    assert (tot.differential(n + 1) @ tot.differential(n)).is_zero()
    assert cohomology_dims(tot) == {n: 0, n + 1: 0, n + 2: 0}


def test_spectral_sequence_of_unit_square():
    K = DoubleComplex(
        nodes={(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1},
        d1={(0, 0): MatrixQ.from_rows([[1]]), (1, 0): MatrixQ.from_rows([[1]])},
        d2={(0, 0): MatrixQ.from_rows([[1]]), (0, 1): MatrixQ.from_rows([[1]])},
    ).validate()
    ss = spectral_pages(K)
    assert ss.page(1).nonzero() == {}
    assert all(n == 0 for n in ss.infinity.values())


def test_spectral_sequence_of_corner(corner):
    ss = spectral_pages(corner)
    assert ss.condition == "A"
    assert ss.page(1).nonzero() == {(1, 0): 2}
    assert ss.stable_page <= 1
    assert ss.filtered[1].dimension == 2
    assert ss.filtered[1].graded[1] == 2


def test_horizontal_strip_is_condition_b():
    K = DoubleComplex(nodes={(-1, 0): 1, (0, 0): 1}, d2={(-1, 0): MatrixQ.from_rows([[1]])})
    assert support_condition(K) == "B"
    ss = spectral_pages(K)
    assert all(n == 0 for n in ss.infinity.values())


def test_negative_rows_are_rejected():
    with pytest.raises(InvalidSupport):
        support_condition(DoubleComplex(nodes={(0, -1): 1}))


def test_double_complex_must_commute():
    K = DoubleComplex(
        nodes={(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1},
        d1={(0, 0): MatrixQ.from_rows([[1]]), (1, 0): MatrixQ.from_rows([[1]])},
        d2={(0, 0): MatrixQ.from_rows([[1]]), (0, 1): MatrixQ.from_rows([[2]])},
    )
    with pytest.raises(InvariantViolation):
        K.validate()


@pytest.mark.slow
def test_random_double_complexes_converge():
    rng = random.Random(11)
    for _ in range(25):
        K = random_double_complex(rng)
        ss = spectral_pages(K)
        totals = cohomology_dims(total_complex(K))
        for n, dim in totals.items():
            assert sum(d for (p, q), d in ss.infinity.items() if p + q == n) == dim
        for earlier, later in zip(ss.pages, ss.pages[1:]):
            assert all(later.dims.get(pos, 0) <= d for pos, d in earlier.dims.items())


def test_identity_comparison_is_isomorphism(corner):
    comparison = filtered_compare(identity_morphism(corner))
    assert comparison.all_isomorphisms
    assert comparison.totals_agree


@pytest.mark.slow
def test_quasi_isomorphic_inclusions_compare_isomorphically():
    rng = random.Random(3)
    for _ in range(5):
        K = random_double_complex(rng, width=3, height=3, max_dim=2)
        comparison = filtered_compare(quasi_isomorphic_inclusion(rng, K))
        assert comparison.all_isomorphisms
        assert comparison.totals_agree


def test_violating_inclusion_fails_precondition():
    rng = random.Random(5)
    K = random_double_complex(rng, width=3, height=3, max_dim=2)
    with pytest.raises(PreconditionFailed):
        filtered_compare(violating_inclusion(rng, K))
