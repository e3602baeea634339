# tests/test_boundary.py
import pytest

from app.core.boundary import (
    BoundaryTrace,
    HDFPart,
    HomBackend,
    PolyMatrix,
    boundary_gram,
    coboundary_check,
    compose,
    compose_classes,
    hdf_cohomology,
    hom_complex,
    identity_morphism,
    is_cocycle,
    jacobian_reduced_complex,
    mf_validate,
    periodic_double_complex,
    shift_compatibility,
    shift_mf,
    shift_morphism,
    shift_twist,
    shifted_dims,
    tensor_mf,
    transport_check,
)
from app.core.exceptions import BackendUnavailable, MismatchedPotential, NotACocycle, NotAFactorization

from tests.conftest import trace_for, univariate_mf


def _end_dims(a, backend=HomBackend.SNF):
    return hdf_cohomology(hom_complex(a, a), backend).dims


def test_rejects_non_factorization(ring_x):
    R, x = ring_x
    F = PolyMatrix.from_rows(R, [[x]], cols=1)
    with pytest.raises(NotAFactorization):
        mf_validate(1, 1, F, F, x**3)


def test_rejects_wrong_block_shapes(ring_x):
    R, x = ring_x
    F = PolyMatrix.from_rows(R, [[x, x]], cols=2)
    G = PolyMatrix.from_rows(R, [[x]], cols=1)
    with pytest.raises(NotAFactorization):
        mf_validate(1, 1, F, G, x**2)


@pytest.mark.parametrize("n, a, dims", [
    (2, 1, (1, 1)),
    (3, 1, (1, 1)),
    (3, 0, (0, 0)),
    (4, 2, (2, 2)),
    (5, 2, (2, 2)),
])
def test_end_cohomology_of_univariate_factorizations(n, a, dims):
    assert _end_dims(univariate_mf(n, a)) == dims


@pytest.mark.parametrize("n, a", [(3, 1), (4, 1), (4, 2), (5, 3)])
def test_truncation_matches_smith_form(n, a):
    mf = univariate_mf(n, a)
    h = hom_complex(mf, mf)
    truncated = hdf_cohomology(h, HomBackend.TRUNCATE)
    assert truncated.stabilized
    assert truncated.dims == hdf_cohomology(h, HomBackend.SNF).dims


def test_snf_needs_one_variable(ring_xy):
    R, x, y = ring_xy
    a = mf_validate(1, 1, PolyMatrix.from_rows(R, [[x]], cols=1), PolyMatrix.from_rows(R, [[x]], cols=1), x**2)
    with pytest.raises(BackendUnavailable):
        hdf_cohomology(hom_complex(a, a), HomBackend.SNF)


def test_potentials_must_match():
    with pytest.raises(MismatchedPotential):
        hom_complex(univariate_mf(3, 1), univariate_mf(4, 1))


def test_tensor_product_rank(ring_xy):
    R, x, y = ring_xy
    a = mf_validate(1, 1, PolyMatrix.from_rows(R, [[x]], cols=1), PolyMatrix.from_rows(R, [[x**2]], cols=1), x**3)
    b = mf_validate(1, 1, PolyMatrix.from_rows(R, [[y]], cols=1), PolyMatrix.from_rows(R, [[y**2]], cols=1), y**3)
    ab = tensor_mf(a, b)
    assert ab.rank == (2, 2)
    assert ab.W == x**3 + y**3
    assert mf_validate(2, 2, ab.F, ab.G, ab.W) == ab


def test_shift_is_an_involution():
    a = univariate_mf(3, 1, "P")
    assert shift_mf(a).name == "ΣP"
    assert shift_mf(a) == univariate_mf(3, 2)
    assert shift_mf(shift_mf(a)) == a
    assert shift_mf(shift_mf(a)).name == "P"


def test_shift_on_morphisms_squares_to_identity():
    a = univariate_mf(3, 1)
    for t in hdf_cohomology(hom_complex(a, a), HomBackend.SNF).basis():
        assert shift_morphism(shift_morphism(t)).matrix == t.matrix


def test_identity_is_a_cocycle_and_composes():
    a = univariate_mf(4, 1)
    h = hom_complex(a, a)
    one = identity_morphism(a)
    assert h.is_cocycle(one)
    for t in hdf_cohomology(h, HomBackend.SNF).basis():
        assert compose(t, one).matrix == t.matrix


def test_cubic_boundary_trace(cubic_trace):
    a = univariate_mf(3, 1)
    tr = BoundaryTrace(a, cubic_trace)
    cohomology = hdf_cohomology(hom_complex(a, a), HomBackend.SNF)
    # d = 1: only odd classes carry trace
    assert all(tr(t) == 0 for t in cohomology.representatives(0))
    assert all(tr(t) != 0 for t in cohomology.representatives(1))


def test_trace_rejects_non_cocycles(ring_x, cubic_trace):
    R, _ = ring_x
    a = univariate_mf(3, 1)
    h = hom_complex(a, a)
    t = h.morphism(PolyMatrix.from_rows(R, [[1, 0], [0, 0]], cols=2), 0)
    assert not h.is_cocycle(t)
    with pytest.raises(NotACocycle):
        BoundaryTrace(a, cubic_trace)(t)


def test_composition_rejects_non_cocycle_factors(ring_x):
    R, _ = ring_x
    a = univariate_mf(3, 1)
    h = hom_complex(a, a)
    one = identity_morphism(a)
    t = h.morphism(PolyMatrix.from_rows(R, [[1, 0], [0, 0]], cols=2), 0)
    assert not is_cocycle(t)
    with pytest.raises(NotACocycle):
        compose(t, one)
    with pytest.raises(NotACocycle):
        compose(one, t)
    with pytest.raises(NotACocycle):
        compose_classes(one, t, hdf_cohomology(h, HomBackend.SNF))


def test_composition_of_classes_lands_in_target_basis():
    a = univariate_mf(3, 1)
    cohomology = hdf_cohomology(hom_complex(a, a), HomBackend.SNF)
    [odd] = cohomology.representatives(1)
    product, coords = compose_classes(odd, identity_morphism(a), cohomology)
    assert product.parity == 1
    assert coords == (1,)


def test_hom_part_needs_a_reduction_map():
    with pytest.raises(TypeError):
        HDFPart()


def test_trace_needs_matching_bulk(ring_x):
    _, x = ring_x
    _, other = trace_for(x**4)
    with pytest.raises(MismatchedPotential):
        BoundaryTrace(univariate_mf(3, 1), other)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_boundary_gram_suite(n):
    _, tr = trace_for(univariate_mf(n, 1).W)
    objects = [univariate_mf(n, a) for a in range(1, n)]
    for a in objects:
        assert coboundary_check(a, tr)
    for a1 in objects:
        for a2 in objects:
            gram = boundary_gram(a1, a2, tr, HomBackend.SNF)
            assert gram.parity_selected
            assert gram.cyclic
            assert gram.nondegenerate


def test_cubic_boundary_gram_is_full_rank(cubic_trace):
    a = univariate_mf(3, 1)
    gram = boundary_gram(a, a, cubic_trace, HomBackend.SNF)
    assert gram.forward.dims == (1, 1)
    assert gram.rank == 2
    assert gram.verdict == "nondegenerate"


def test_shift_laws(cubic_trace):
    a = univariate_mf(3, 1)
    assert all(check.holds for check in shift_compatibility(a, cubic_trace, HomBackend.SNF))
    assert transport_check(a, a, HomBackend.SNF).isomorphism
    dims = shifted_dims(a, univariate_mf(3, 2), HomBackend.SNF)
    assert len(set(dims.values())) == 1


def test_quadric_tensor_boundary_sector(ring_xy):
    R, x, y = ring_xy
    X = mf_validate(1, 1, PolyMatrix.from_rows(R, [[x]], cols=1), PolyMatrix.from_rows(R, [[x]], cols=1), x**2)
    Y = mf_validate(1, 1, PolyMatrix.from_rows(R, [[y]], cols=1), PolyMatrix.from_rows(R, [[y]], cols=1), y**2)
    q = tensor_mf(X, Y)
    _, tr = trace_for(q.W)
    gram = boundary_gram(q, q, tr, HomBackend.TRUNCATE)
    assert gram.forward.dims == (2, 2)
    assert gram.nondegenerate
    assert all(check.holds for check in shift_compatibility(q, tr, HomBackend.TRUNCATE))


def test_periodic_double_complex_totals():
    a = univariate_mf(4, 2)
    ma, _ = trace_for(a.W)
    M = jacobian_reduced_complex(hom_complex(a, a), ma)
    periodic = periodic_double_complex(M, (-2, 3))
    expected = M.cohomology_dims()
    assert all(d == expected[n % 2] for n, d in periodic.total_dims().items())
    assert list(periodic.interior) == [-2, -1, 0, 1, 2, 3]


@pytest.mark.parametrize("n, a", [(2, 1), (3, 1), (4, 2), (5, 3)])
def test_odd_isomorphisms_to_the_shift_square_to_minus_one(n, a):
    assert shift_twist(univariate_mf(n, a)) == -1


def test_tensor_factorization_has_the_same_twist(ring_xy):
    R, x, y = ring_xy
    X = mf_validate(1, 1, PolyMatrix.from_rows(R, [[x]], cols=1), PolyMatrix.from_rows(R, [[x]], cols=1), x**2)
    Y = mf_validate(1, 1, PolyMatrix.from_rows(R, [[y]], cols=1), PolyMatrix.from_rows(R, [[y]], cols=1), y**2)
    assert shift_twist(tensor_mf(X, Y)) == -1
