# app/core/homology/spectral.py
"""
Spectral sequence of the column filtration F^p = ⊕_{p' >= p} K^{p',*}.

Pages are the subquotients

    E_r^p = Z_r^p / (Z_{r-1}^{p+1} + δ Z_{r-1}^{p-r+1}),
    Z_r^p = { x in F^p : δx in F^{p+r} },

computed directly in the total complex.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from loguru import logger

from app.config import settings
from app.core.exceptions import InvalidSupport, InvariantViolation, NotStabilized
from app.core.exactalg import MatrixQ, from_sparse, sparse_nullspace
from app.core.exactalg.matrices import SparseRow, Vector
from app.core.homology.complexes import (
    DoubleComplex,
    Position,
    QuotientSpace,
    apply_columns,
    total_complex,
    total_layout,
)


@dataclass(frozen=True)
class SpectralPage:
    """E_r with representatives in the total complex and d_r : (p,q) -> (p+r, q-r+1)"""
    r: int
    dims: Dict[Position, int]
    representatives: Dict[Position, Tuple[Vector, ...]] = field(default_factory=dict)
    differential: Dict[Position, MatrixQ] = field(default_factory=dict)

    def nonzero(self) -> Dict[Position, int]:
        return {pos: n for pos, n in self.dims.items() if n}


@dataclass(frozen=True)
class FilteredCohomology:
    """H^n with the induced filtration: steps[p] = dim F^p H^n, graded[p] = dim gr^p H^n"""
    degree: int
    dimension: int
    steps: Dict[int, int]
    graded: Dict[int, int]


@dataclass(frozen=True)
class SpectralSequence:
    condition: str
    pages: List[SpectralPage]
    stable_page: int
    infinity: Dict[Position, int]
    filtered: Dict[int, FilteredCohomology]

    def page(self, r: int) -> SpectralPage:
        """E_r; pages past the stable one repeat it"""
        return self.pages[min(r, self.stable_page)]


def support_condition(K: DoubleComplex) -> str:
    """
    'A' for first-quadrant support, 'B' for a horizontal strip q >= 0.

    Raises:
        InvalidSupport: some node sits at negative q
    """
    support = K.support
    if any(q < 0 for _, q in support):
        raise InvalidSupport(f"node at negative q in support {support}")
    return "A" if all(p >= 0 for p, _ in support) else "B"


class FilteredTotal:
    """Total complex of K with the column filtration and cached filtered cocycle spaces"""

    def __init__(self, K: DoubleComplex):
        self.K = K
        self.complex = total_complex(K)
        self.layout = total_layout(K)
        self.columns = {n: self.complex.differential(n).sparse_columns() for n in self.complex.degrees}
        ps = list(K.p_range)
        self.p_min = ps[0] if ps else 0
        self.p_max = ps[-1] if ps else -1
        self._cache: Dict[Tuple[int, int, int], List[SparseRow]] = {}

    def dim(self, n: int) -> int:
        return self.complex.dim(n)

    def filtration_coords(self, n: int, p: int) -> List[int]:
        """Coordinates of F^p K^n"""
        coords = []
        for block in self.layout.get(n, []):
            if block.p >= p:
                coords.extend(range(block.offset, block.offset + block.size))
        return coords

    def delta(self, n: int, vector: SparseRow) -> SparseRow:
        columns = self.columns.get(n)
        if columns is None:
            return {}
        return apply_columns(columns, vector)

    def filtered_cocycles(self, n: int, source: int, target: int) -> List[SparseRow]:
        """Basis of { x in F^source K^n : δx in F^target K^(n+1) }"""
        key = (n, max(source, self.p_min), min(target, self.p_max + 1))
        if key in self._cache:
            return self._cache[key]
        _, source, target = key
        cols = self.filtration_coords(n, source)
        allowed = set(self.filtration_coords(n + 1, target))
        columns = self.columns.get(n)
        # constraint rows: components of δx outside F^target
        rows: Dict[int, SparseRow] = {}
        if columns is not None:
            for local, j in enumerate(cols):
                for i, value in columns[j].items():
                    if i not in allowed:
                        rows.setdefault(i, {})[local] = value
        kernel = sparse_nullspace(list(rows.values()), len(cols))
        basis = [{cols[local]: value for local, value in v.items()} for v in kernel]
        self._cache[key] = basis
        return basis

    def z(self, n: int, p: int, r: int) -> List[SparseRow]:
        """Z_r^p in total degree n; Z_r^p = F^p for r < 0"""
        return self.filtered_cocycles(n, p, p + max(r, 0))

    def page_quotient(self, n: int, p: int, r: int) -> QuotientSpace:
        numerator = self.z(n, p, r)
        denominator = list(self.z(n, p + 1, r - 1))
        denominator += [self.delta(n - 1, x) for x in self.z(n - 1, p - r + 1, r - 1)]
        return QuotientSpace(self.dim(n), numerator, [v for v in denominator if v])

    def cocycles(self, n: int, p: int) -> List[SparseRow]:
        """Z ∩ F^p"""
        return self.filtered_cocycles(n, p, self.p_max + 1)

    def boundaries(self, n: int, p: int) -> List[SparseRow]:
        """B ∩ F^p"""
        images = [self.delta(n - 1, y) for y in self.filtered_cocycles(n - 1, self.p_min, p)]
        return [v for v in images if v]

    def graded_quotient(self, n: int, p: int) -> QuotientSpace:
        """gr^p H^n = (Z ∩ F^p) / ((Z ∩ F^(p+1)) + (B ∩ F^p))"""
        denominator = list(self.cocycles(n, p + 1)) + self.boundaries(n, p)
        return QuotientSpace(self.dim(n), self.cocycles(n, p), denominator)

    def step_dimension(self, n: int, p: int) -> int:
        """dim F^p H^n = dim (Z ∩ F^p) / (B ∩ F^p)"""
        return QuotientSpace(self.dim(n), self.cocycles(n, p), self.boundaries(n, p)).dim


def _build_page(ft: FilteredTotal, r: int) -> SpectralPage:
    quotients: Dict[Position, QuotientSpace] = {}
    for n in ft.complex.degrees:
        for p in range(ft.p_min, ft.p_max + 1):
            quotients[(p, n - p)] = ft.page_quotient(n, p, r)

    differential: Dict[Position, MatrixQ] = {}
    for (p, q), source in quotients.items():
        target_pos = (p + r, q - r + 1)
        target = quotients.get(target_pos)
        if not source.dim or target is None or not target.dim:
            continue
        columns = []
        for x in source.representatives:
            coords = target.coordinates(ft.delta(p + q, x))
            if coords is None:
                raise InvariantViolation(f"d_{r} leaves E_{r} at {(p, q)} -> {target_pos}")
            columns.append(coords)
        differential[(p, q)] = MatrixQ.from_columns(columns, target.dim)

    return SpectralPage(
        r=r,
        dims={pos: quotient.dim for pos, quotient in quotients.items()},
        representatives={
            pos: tuple(from_sparse(v, ft.dim(pos[0] + pos[1])) for v in quotient.representatives)
            for pos, quotient in quotients.items()
        },
        differential=differential,
    )


def _audit(page: SpectralPage, following: SpectralPage) -> None:
    """d_r∘d_r = 0 and E_(r+1) = ker d_r / im d_r dimensionwise"""
    r = page.r
    for (p, q), dim in page.dims.items():
        outgoing = page.differential.get((p, q))
        incoming = page.differential.get((p - r, q + r - 1))
        if outgoing is not None and incoming is not None:
            if not (outgoing @ incoming).is_zero():
                raise InvariantViolation(f"d_{r}∘d_{r} ≠ 0 at {(p, q)}")
        kernel = dim - (outgoing.rank() if outgoing is not None else 0)
        image = incoming.rank() if incoming is not None else 0
        if following.dims.get((p, q), 0) != kernel - image:
            raise InvariantViolation(f"E_{r + 1} at {(p, q)} is not the cohomology of d_{r}")


def filtered_cohomology(ft: FilteredTotal) -> Dict[int, FilteredCohomology]:
    result: Dict[int, FilteredCohomology] = {}
    for n in ft.complex.degrees:
        steps = {p: ft.step_dimension(n, p) for p in range(ft.p_min, ft.p_max + 2)}
        graded = {p: ft.graded_quotient(n, p).dim for p in range(ft.p_min, ft.p_max + 1)}
        result[n] = FilteredCohomology(degree=n, dimension=steps[ft.p_min], steps=steps, graded=graded)
    return result


def spectral_pages(K: DoubleComplex, r_max: Optional[int] = None) -> SpectralSequence:
    """
    Pages E_0, E_1, ... of the column-filtration spectral sequence up to the
    first page equal to E_∞.

    Args:
        K: double complex satisfying condition A or B
        r_max: last page index allowed before giving up

    Raises:
        InvalidSupport: nodes at negative q
        NotStabilized: E_(r_max) still differs from E_∞
    """
    r_max = settings.SPECTRAL_R_MAX if r_max is None else r_max
    condition = support_condition(K)
    K.validate()
    ft = FilteredTotal(K)
    filtered = filtered_cohomology(ft)
    infinity = {
        (p, n - p): dim
        for n, fc in filtered.items()
        for p, dim in fc.graded.items()
    }

    pages: List[SpectralPage] = []
    for r in range(r_max + 1):
        page = _build_page(ft, r)
        if pages:
            _audit(pages[-1], page)
        pages.append(page)
        if page.dims == infinity:
            logger.debug(f"spectral sequence ({condition}) degenerates at E_{r}")
            return SpectralSequence(condition, pages, r, infinity, filtered)
    raise NotStabilized(f"pages still change at r_max={r_max}")
