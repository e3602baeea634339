# app/core/homology/compare.py
"""
Comparison of filtered total cohomology along an injective morphism of
double complexes that is a quasi-isomorphism on every column.
"""
from dataclasses import dataclass
from typing import Dict, List, Tuple

from loguru import logger

from app.core.exceptions import PreconditionFailed
from app.core.exactalg import MatrixQ
from app.core.exactalg.matrices import SparseRow
from app.core.homology.complexes import DoubleComplex, Position, apply_columns, cohomology_quotient, total_layout
from app.core.homology.spectral import FilteredTotal, support_condition


@dataclass(frozen=True)
class DoubleComplexMorphism:
    """τ^{p,q} : K^{p,q} -> L^{p,q}; missing components are zero"""
    source: DoubleComplex
    target: DoubleComplex
    maps: Dict[Position, MatrixQ]

    def component(self, p: int, q: int) -> MatrixQ:
        matrix = self.maps.get((p, q))
        if matrix is not None:
            return matrix
        return MatrixQ.zeros(self.target.dim(p, q), self.source.dim(p, q))


@dataclass(frozen=True)
class FilteredVerdict:
    p: int
    n: int
    preserves_filtration: bool
    graded_isomorphism: bool
    source_dim: int
    target_dim: int

    @property
    def verdict(self) -> str:
        return "isomorphism" if self.preserves_filtration and self.graded_isomorphism else "not an isomorphism"


@dataclass(frozen=True)
class FilteredComparison:
    verdicts: List[FilteredVerdict]
    # total cohomology dimensions per n: (source, target)
    totals: Dict[int, Tuple[int, int]]

    @property
    def all_isomorphisms(self) -> bool:
        return all(v.verdict == "isomorphism" for v in self.verdicts)

    @property
    def totals_agree(self) -> bool:
        return all(a == b for a, b in self.totals.values())


def _check_preconditions(tau: DoubleComplexMorphism) -> None:
    K, L = tau.source, tau.target
    positions = sorted(set(K.support) | set(L.support))
    for (p, q) in positions:
        t = tau.component(p, q)
        if t.rank() != K.dim(p, q):
            raise PreconditionFailed(f"τ is not injective at ({p},{q})")
        if L.vertical(p, q) @ t != tau.component(p, q + 1) @ K.vertical(p, q):
            raise PreconditionFailed(f"τ does not commute with d1 at ({p},{q})")
        if L.horizontal(p, q) @ t != tau.component(p + 1, q) @ K.horizontal(p, q):
            raise PreconditionFailed(f"τ does not commute with d2 at ({p},{q})")

    for p in sorted({p for p, _ in positions}):
        column_k, column_l = K.column(p), L.column(p)
        qs = sorted(set(column_k.degrees) | set(column_l.degrees))
        for q in qs:
            hk = cohomology_quotient(column_k, q) if q in column_k.degrees else None
            hl = cohomology_quotient(column_l, q) if q in column_l.degrees else None
            dim_k = hk.dim if hk else 0
            dim_l = hl.dim if hl else 0
            if dim_k != dim_l:
                raise PreconditionFailed(
                    f"vertical cohomology differs at ({p},{q}): {dim_k} vs {dim_l}"
                )
            if not dim_k:
                continue
            columns = tau.component(p, q).sparse_columns()
            images = [apply_columns(columns, rep) for rep in hk.representatives]
            coords = [hl.coordinates(v) for v in images]
            if any(c is None for c in coords) or MatrixQ.from_columns(coords, dim_l).rank() != dim_l:
                raise PreconditionFailed(f"τ is not a quasi-isomorphism on column {p} at q={q}")

    if support_condition(K) != support_condition(L):
        raise PreconditionFailed("source and target satisfy different support conditions")


def _total_map(tau: DoubleComplexMorphism, n: int) -> List[SparseRow]:
    """Sparse columns of Tot(τ) in degree n"""
    src_layout = {b.p: b for b in total_layout(tau.source).get(n, [])}
    dst_layout = {b.p: b for b in total_layout(tau.target).get(n, [])}
    size = sum(b.size for b in src_layout.values())
    columns: List[SparseRow] = [{} for _ in range(size)]
    for p, block in src_layout.items():
        target = dst_layout.get(p)
        if target is None:
            continue
        matrix = tau.component(p, n - p)
        for j in range(block.size):
            columns[block.offset + j] = {
                target.offset + i: matrix[i, j] for i in range(target.size) if matrix[i, j]
            }
    return columns


def filtered_compare(tau: DoubleComplexMorphism) -> FilteredComparison:
    """
    Verdict per (p, n) on the map F^p H^n(Tot K) -> F^p H^n(Tot L).

    Raises:
        PreconditionFailed: τ is not injective, not a chain map, or not a
            quasi-isomorphism on some column
    """
    _check_preconditions(tau)
    source, target = FilteredTotal(tau.source), FilteredTotal(tau.target)
    degrees = sorted(set(source.complex.degrees) | set(target.complex.degrees))
    p_lo = min(source.p_min, target.p_min)
    p_hi = max(source.p_max, target.p_max)

    verdicts: List[FilteredVerdict] = []
    totals = {}
    for n in degrees:
        columns = _total_map(tau, n)
        totals[n] = (source.step_dimension(n, p_lo), target.step_dimension(n, p_lo))
        for p in range(p_lo, p_hi + 1):
            gr_source = source.graded_quotient(n, p)
            gr_target = target.graded_quotient(n, p)
            allowed = set(target.filtration_coords(n, p))
            preserves = True
            coords = []
            for cocycle in source.cocycles(n, p):
                image = apply_columns(columns, cocycle)
                if any(i not in allowed for i in image):
                    preserves = False
            for rep in gr_source.representatives:
                coords.append(gr_target.coordinates(apply_columns(columns, rep)))
            iso = (
                gr_source.dim == gr_target.dim
                and all(c is not None for c in coords)
                and (gr_source.dim == 0 or MatrixQ.from_columns(coords, gr_target.dim).rank() == gr_target.dim)
            )
            verdicts.append(FilteredVerdict(p, n, preserves, iso, gr_source.dim, gr_target.dim))

    result = FilteredComparison(verdicts, totals)
    logger.debug(f"filtered compare: {len(verdicts)} graded pieces, all iso = {result.all_isomorphisms}")
    return result


def identity_morphism(K: DoubleComplex) -> DoubleComplexMorphism:
    return DoubleComplexMorphism(K, K, {pos: MatrixQ.identity(K.dim(*pos)) for pos in K.support})
