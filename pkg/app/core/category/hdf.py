# app/core/category/hdf.py
"""
The cohomological category of matrix factorizations on a chosen object set.

Objects are named by their labels, made unique with a "#k" suffix. When the
object list is closed under Σ the table also carries the shift functor, the
transport matrices of ρ and the Serre traces used by the duality checks.
"""
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from app.core.boundary import (
    BoundaryTrace,
    HDFCohomology,
    HomBackend,
    MatrixFactorization,
    compose_classes,
    hdf_cohomology,
    hom_complex,
    identity_morphism,
    same_potential,
    shift_mf,
    shift_morphism,
    shift_transport,
    shift_twist,
)
from app.core.bulk import BulkTrace
from app.core.category.tables import Pair, ShiftData, SuperCategoryTable, Vector
from app.core.exactalg import ZERO, MatrixQ
from app.core.exceptions import InvariantViolation


def close_under_shift(objects: Sequence[MatrixFactorization]) -> List[MatrixFactorization]:
    """The object list with Σa appended for every a whose shift is missing"""
    closed = list(objects)
    for a in objects:
        shifted = shift_mf(a)
        if shifted not in closed:
            closed.append(shifted)
    return closed


def object_names(objects: Sequence[MatrixFactorization]) -> List[str]:
    names: List[str] = []
    for a in objects:
        name = a.label()
        if name in names:
            name = f"{name}#{len(names)}"
        names.append(name)
    return names


def _flat(dims: Tuple[int, int], parity: int, coords: Sequence) -> Vector:
    vector = [ZERO] * (dims[0] + dims[1])
    offset = dims[0] if parity else 0
    for k, value in enumerate(coords):
        vector[offset + k] = value
    return tuple(vector)


def _shift_partner(a: MatrixFactorization, objects: Sequence[MatrixFactorization], names: Sequence[str]) -> Optional[str]:
    shifted = shift_mf(a)
    for name, b in zip(names, objects):
        if b == shifted:
            return name
    return None


def build_hdf_category(
    objects: Sequence[MatrixFactorization],
    bulk: Optional[BulkTrace] = None,
    backend: Optional[HomBackend] = None,
    truncation: Optional[int] = None,
) -> SuperCategoryTable:
    """
    Structure constants of class-level composition on all object triples.

    Args:
        objects: factorizations of one W
        bulk: bulk trace for the trace covectors; omitted tables carry none
        backend: Hom cohomology backend
        truncation: degree bound for the truncate backend

    Raises:
        MismatchedPotential: objects factor different potentials
    """
    objects = list(objects)
    if not objects:
        return SuperCategoryTable([], {}, {}, {})
    same_potential(*objects)
    names = object_names(objects)
    by_name = dict(zip(names, objects))
    logger.info(f"🚀 building cohomology category on {len(objects)} objects")

    cohomology: Dict[Pair, HDFCohomology] = {}
    for (na, a), (nb, b) in product(by_name.items(), repeat=2):
        cohomology[(na, nb)] = hdf_cohomology(hom_complex(a, b), backend, truncation)
    dims = {pair: h.dims for pair, h in cohomology.items()}
    parities = {pair: (0,) * e + (1,) * o for pair, (e, o) in dims.items()}
    bases = {pair: h.basis() for pair, h in cohomology.items()}

    composition = {}
    for na, nb, nc in product(names, repeat=3):
        target = cohomology[(na, nc)]
        grid = []
        for g in bases[(nb, nc)]:
            row = []
            for f in bases[(na, nb)]:
                composite, coords = compose_classes(g, f, target)
                row.append(_flat(dims[(na, nc)], composite.parity, coords))
            grid.append(row)
        composition[(na, nb, nc)] = grid

    identities = {
        name: _flat(dims[(name, name)], 0, cohomology[(name, name)].reduce(identity_morphism(a)))
        for name, a in by_name.items()
    }
    table = SuperCategoryTable(names, parities, composition, identities, signature=objects[0].ring.ngens % 2)

    if bulk is not None:
        traces = {name: BoundaryTrace(a, bulk) for name, a in by_name.items()}
        table.traces = {name: tuple(traces[name](t) for t in bases[(name, name)]) for name in names}
        if not table.signature:
            table.serre_traces = dict(table.traces)
    else:
        traces = {}

    partners = {name: _shift_partner(a, objects, names) for name, a in by_name.items()}
    if all(partners.values()):
        _attach_shift(table, by_name, partners, cohomology, bases, traces)
    else:
        logger.debug("object set is not closed under Σ; no shift data attached")
    table.validate()
    logger.info(f"✅ cohomology category verified on {len(names)} objects")
    return table


def _attach_shift(
    table: SuperCategoryTable,
    by_name: Dict[str, MatrixFactorization],
    partners: Dict[str, str],
    cohomology: Dict[Pair, HDFCohomology],
    bases,
    traces: Dict[str, BoundaryTrace],
) -> None:
    morphisms: Dict[Pair, MatrixQ] = {}
    for (na, nb), basis in bases.items():
        target_pair = (partners[na], partners[nb])
        target = cohomology[target_pair]
        columns = [_flat(target.dims, t.parity, target.reduce(shift_morphism(t))) for t in basis]
        morphisms[(na, nb)] = MatrixQ.from_columns(columns, sum(target.dims))
    twists = {shift_twist(a) for a in by_name.values()}
    if len(twists) != 1:
        raise InvariantViolation(f"objects disagree on the sign of θ_Σa ∘ θ_a: {sorted(twists)}")
    table.shift = ShiftData(dict(partners), morphisms, twists.pop())

    for (na, nb), h in cohomology.items():
        a, b = by_name[na], by_name[nb]
        source = cohomology[(na, partners[nb])]
        columns = [h.reduce(shift_transport(a, b, u)) for u in source.representatives(0)]
        table.transport[(na, nb)] = MatrixQ.from_columns(columns, h.dims[1])

    if not traces or not table.signature:
        return
    for na, a in by_name.items():
        endo = cohomology[(na, partners[na])]
        covector = [traces[na](shift_transport(a, a, u)) for u in endo.representatives(0)]
        table.serre_traces[na] = tuple(covector) + (ZERO,) * endo.dims[1]
