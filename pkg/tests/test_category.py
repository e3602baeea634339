# tests/test_category.py
from itertools import product

import pytest

from app.core.boundary import HomBackend, PolyMatrix, mf_validate, tensor_mf
from app.core.category import (
    InvolutiveCategoryTable,
    LinearCategoryTable,
    ShiftData,
    SuperCategoryTable,
    build_hdf_category,
    calabi_yau_check,
    close_under_shift,
    even_subcategory,
    graded_dims_agree,
    hdf_transport_check,
    object_names,
    same_table,
    serre_check,
    serre_functor,
    supercompletion,
)
from app.core.exactalg import ONE, MatrixQ
from app.core.exceptions import InvariantViolation, MismatchedPotential, NotInvolutive, PreconditionFailed

from tests.conftest import trace_for, univariate_mf


def swapped_points(swap=None, twist=1):
    """Two objects with only identities, exchanged by Σ"""
    objects = ["A", "B"]
    swap = swap or {"A": "B", "B": "A"}
    dim = {(a, b): int(a == b) for a, b in product(objects, repeat=2)}
    return InvolutiveCategoryTable(
        objects=objects,
        parities={pair: (0,) * n for pair, n in dim.items()},
        composition={
            (a, b, c): [[(ONE,)] * dim[(a, b)] for _ in range(dim[(b, c)])]
            for a, b, c in product(objects, repeat=3)
        },
        identities={"A": (ONE,), "B": (ONE,)},
        involution=ShiftData(swap, {pair: MatrixQ.identity(n) for pair, n in dim.items()}, twist),
    )


@pytest.fixture
def cubic_category(cubic_objects, cubic_trace):
    return build_hdf_category(cubic_objects, cubic_trace, HomBackend.SNF)


def test_hand_built_table_validates():
    table = swapped_points().validate()
    assert table.graded_dim("A", "A") == (1, 0)
    assert table.compose("A", "A", "A", (ONE,), (ONE,)) == (ONE,)


def test_broken_unit_is_rejected():
    table = swapped_points()
    table.identities["A"] = (ONE + ONE,)
    with pytest.raises(InvariantViolation):
        table.validate()


def test_non_involution_is_rejected():
    with pytest.raises(NotInvolutive):
        swapped_points({"A": "B", "B": "B"}).check_involution()


def test_supercompletion_turns_swaps_into_odd_morphisms():
    graded = supercompletion(swapped_points().validate())
    assert graded.graded_dim("A", "A") == (1, 0)
    assert graded.graded_dim("A", "B") == (0, 1)
    # odd ∘ odd lands on the identity
    assert graded.compose("A", "B", "A", (ONE,), (ONE,)) == (ONE,)


def test_twisted_supercompletion_signs_odd_products():
    graded = supercompletion(swapped_points(twist=-1).validate())
    assert graded.compose("A", "B", "A", (ONE,), (ONE,)) == (-ONE,)
    assert graded.compose("A", "A", "B", (ONE,), (ONE,)) == (ONE,)
    assert graded.shift.twist == -1


def test_twisted_round_trip_keeps_twist():
    c = swapped_points(twist=-1).validate()
    back = even_subcategory(supercompletion(c))
    assert back.involution.twist == -1
    assert same_table(back, c)
    assert not same_table(back, swapped_points().validate())


def test_twist_must_be_a_sign():
    with pytest.raises(NotInvolutive):
        swapped_points(twist=2).check_involution()


def test_even_part_of_completion_is_original():
    c = swapped_points().validate()
    assert same_table(even_subcategory(supercompletion(c)), c)


def test_even_subcategory_needs_shift():
    table = LinearCategoryTable(["A"], {("A", "A"): (0,)}, {("A", "A", "A"): [[(ONE,)]]}, {"A": (ONE,)})
    graded = SuperCategoryTable(table.objects, table.parities, table.composition, table.identities)
    with pytest.raises(PreconditionFailed):
        even_subcategory(graded)


def test_close_under_shift_adds_missing_partners():
    a = univariate_mf(4, 1)
    closed = close_under_shift([a])
    assert len(closed) == 2
    assert len(close_under_shift(closed)) == 2
    assert len(close_under_shift([univariate_mf(4, 2)])) == 1


def test_object_names_are_unique():
    a = univariate_mf(3, 1, "P")
    assert object_names([a, a]) == ["P", "P#1"]


def test_cubic_category_structure(cubic_category):
    t = cubic_category
    assert t.objects == ["P1", "P2"]
    assert t.shift.objects == {"P1": "P2", "P2": "P1"}
    assert t.signature == 1
    for a, b in product(t.objects, repeat=2):
        assert t.graded_dim(a, b) == (1, 1)


def test_cubic_serre_duality(cubic_category):
    assert serre_functor(cubic_category, 1) == {"P1": "P2", "P2": "P1"}
    verdicts = serre_check(cubic_category)
    assert len(verdicts) == 4
    assert all(v.holds for v in verdicts)
    assert all(v.verdict == "pass" for v in verdicts)


def test_cubic_calabi_yau_structure(cubic_category):
    verdict = calabi_yau_check(cubic_category)
    assert verdict.parity_supported
    assert verdict.cyclic
    assert verdict.nondegenerate


def test_cubic_round_trips(cubic_category):
    t = cubic_category
    assert t.shift.twist == -1
    ev = even_subcategory(t)
    assert graded_dims_agree(supercompletion(ev), t)
    assert same_table(even_subcategory(supercompletion(ev)), ev)
    verdict = hdf_transport_check(t)
    assert verdict.failures == []
    assert verdict.holds


def test_serre_check_needs_traces(cubic_objects):
    t = build_hdf_category(cubic_objects, None, HomBackend.SNF)
    with pytest.raises(PreconditionFailed):
        serre_check(t, 1)


def test_objects_must_share_potential():
    with pytest.raises(MismatchedPotential):
        build_hdf_category([univariate_mf(3, 1), univariate_mf(4, 1)])


def test_empty_category():
    t = build_hdf_category([])
    assert t.objects == []
    assert serre_check(t, 2) == []


@pytest.mark.slow
def test_quadric_tensor_category(ring_xy):
    R, x, y = ring_xy
    X = mf_validate(1, 1, PolyMatrix.from_rows(R, [[x]], cols=1), PolyMatrix.from_rows(R, [[x]], cols=1), x**2)
    Y = mf_validate(1, 1, PolyMatrix.from_rows(R, [[y]], cols=1), PolyMatrix.from_rows(R, [[y]], cols=1), y**2)
    q = tensor_mf(X, Y)
    _, tr = trace_for(q.W)
    t = build_hdf_category(close_under_shift([q]), tr, HomBackend.TRUNCATE)
    assert t.signature == 0
    assert all(v.holds for v in serre_check(t))
    assert calabi_yau_check(t).holds
    assert hdf_transport_check(t).holds
