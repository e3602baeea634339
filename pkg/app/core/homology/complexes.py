# app/core/homology/complexes.py
"""
Bounded cochain complexes and double complexes of finite-dimensional
rational vector spaces.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from app.core.exceptions import InvariantViolation
from app.core.exactalg import (
    ZERO,
    ONE,
    EchelonBasis,
    MatrixQ,
    from_sparse,
    sparse_nullspace,
)
from app.core.exactalg.matrices import SparseRow, Vector, add_scaled

Position = Tuple[int, int]


def apply_columns(columns: Sequence[SparseRow], vector: SparseRow) -> SparseRow:
    """Matrix (given by sparse columns) times sparse vector"""
    result: SparseRow = {}
    for j, value in vector.items():
        add_scaled(result, columns[j], value)
    return result


# ========================================
# Quotients of subspaces
# ========================================

class QuotientSpace:
    """
    A subquotient N / D of Q^n with D ⊆ N.

    Representatives are picked from the numerator generators in order,
    skipping those already in D + span(previous representatives).
    """

    def __init__(self, dimension: int, numerator: Sequence[SparseRow], denominator: Sequence[SparseRow]):
        self.dimension = dimension
        self._echelon = EchelonBasis(dimension)
        self._echelon.extend(denominator)
        self._offset = len(self._echelon.generators)
        self.representatives: List[SparseRow] = []
        for vector in numerator:
            if self._echelon.add(vector) is not None:
                self.representatives.append(dict(vector))

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coordinates(self, vector: SparseRow) -> Optional[List]:
        """Coordinates of the class of vector, or None when vector is outside N"""
        remainder, combination = self._echelon.reduce(vector)
        if remainder:
            return None
        return [combination.get(self._offset + i, ZERO) for i in range(self.dim)]

    def is_trivial(self, vector: SparseRow) -> bool:
        coords = self.coordinates(vector)
        return coords is not None and not any(coords)


# ========================================
# Single complexes
# ========================================

@dataclass(frozen=True)
class FiniteComplex:
    """
    Bounded complex with nodes in degrees start .. start + len(dims) - 1.

    differentials[i] maps degree start + i to degree start + i + 1.
    """
    start: int
    dims: Tuple[int, ...]
    differentials: Tuple[MatrixQ, ...]

    def __post_init__(self):
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise ValueError(f"{len(self.dims)} nodes need {max(len(self.dims) - 1, 0)} differentials")
        for i, delta in enumerate(self.differentials):
            if (delta.rows, delta.cols) != (self.dims[i + 1], self.dims[i]):
                raise ValueError(f"differential at degree {self.start + i} has shape {delta.rows}x{delta.cols}")

    @property
    def degrees(self) -> range:
        return range(self.start, self.start + len(self.dims))

    def dim(self, k: int) -> int:
        i = k - self.start
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    def differential(self, k: int) -> MatrixQ:
        """δ_k : node(k) -> node(k+1); zero outside the stored range"""
        i = k - self.start
        if 0 <= i < len(self.differentials):
            return self.differentials[i]
        return MatrixQ.zeros(self.dim(k + 1), self.dim(k))

    def validate(self) -> "FiniteComplex":
        for k in self.degrees:
            product = self.differential(k + 1) @ self.differential(k)
            if not product.is_zero():
                raise InvariantViolation(f"δ∘δ ≠ 0 at degree {k}")
        return self

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.dim(k) for k in self.degrees)

    @classmethod
    def from_dict(cls, dims: Dict[int, int], differentials: Dict[int, MatrixQ]) -> "FiniteComplex":
        """Build from sparse data; missing differentials are zero"""
        if not dims:
            return cls(0, (), ())
        lo, hi = min(dims), max(dims)
        all_dims = tuple(dims.get(k, 0) for k in range(lo, hi + 1))
        maps = tuple(
            differentials.get(k, MatrixQ.zeros(all_dims[k + 1 - lo], all_dims[k - lo]))
            for k in range(lo, hi)
        )
        return cls(lo, all_dims, maps)


@dataclass(frozen=True)
class CohomologyGroup:
    """H^k with chosen representative cocycles and a projection onto coordinates"""
    degree: int
    dimension: int
    representatives: Tuple[Vector, ...]
    projection: MatrixQ  # dimension x node(k), kills coboundaries, reps -> unit vectors

    def coordinates(self, cocycle: Sequence) -> Vector:
        return self.projection.apply(cocycle)


def _image_basis(delta: MatrixQ) -> List[SparseRow]:
    return [c for c in delta.sparse_columns() if c]


def cohomology_quotient(c: FiniteComplex, k: int) -> QuotientSpace:
    cocycles = sparse_nullspace(c.differential(k).sparse_rows(), c.dim(k))
    boundaries = _image_basis(c.differential(k - 1))
    return QuotientSpace(c.dim(k), cocycles, boundaries)


def cohomology(c: FiniteComplex) -> Dict[int, CohomologyGroup]:
    """
    Cohomology in every degree of the complex.

    Returns:
        degree -> CohomologyGroup; dim H^k = dim ker δ_k - rank δ_(k-1)
    """
    groups: Dict[int, CohomologyGroup] = {}
    for k in c.degrees:
        n = c.dim(k)
        quotient = cohomology_quotient(c, k)
        # complete to a basis of the whole node so the projection is total
        completion = EchelonBasis(n)
        boundaries = _image_basis(c.differential(k - 1))
        completion.extend(boundaries)
        offset = len(completion.generators)
        completion.extend(quotient.representatives)
        for i in range(n):
            completion.add({i: ONE})
        rows: List[List] = [[ZERO] * n for _ in range(quotient.dim)]
        for i in range(n):
            _, combination = completion.reduce({i: ONE})
            for r in range(quotient.dim):
                rows[r][i] = combination.get(offset + r, ZERO)
        groups[k] = CohomologyGroup(
            degree=k,
            dimension=quotient.dim,
            representatives=tuple(from_sparse(v, n) for v in quotient.representatives),
            projection=MatrixQ.from_rows(rows, cols=n),
        )
    logger.debug(f"cohomology dims {[groups[k].dimension for k in c.degrees]} over degrees {list(c.degrees)}")
    return groups


def cohomology_dims(c: FiniteComplex) -> Dict[int, int]:
    """Dimensions only; no representatives"""
    dims = {}
    for k in c.degrees:
        kernel = c.dim(k) - c.differential(k).rank()
        dims[k] = kernel - c.differential(k - 1).rank()
    return dims


def dual_complex(c: FiniteComplex) -> FiniteComplex:
    """(F*)^k = (F^{-k})*, with δ*_k the transpose of δ_{-k-1}"""
    if not c.dims:
        return c
    end = c.start + len(c.dims) - 1
    dims = tuple(c.dim(-k) for k in range(-end, -c.start + 1))
    maps = tuple(c.differential(-k - 1).transpose() for k in range(-end, -c.start))
    return FiniteComplex(-end, dims, maps)


# ========================================
# Double complexes
# ========================================

@dataclass(frozen=True)
class DoubleComplex:
    """
    Finite double complex.

    d1[(p, q)] : K^{p,q} -> K^{p,q+1} (vertical)
    d2[(p, q)] : K^{p,q} -> K^{p+1,q} (horizontal)
    Missing differentials are zero.
    """
    nodes: Dict[Position, int]
    d1: Dict[Position, MatrixQ] = field(default_factory=dict)
    d2: Dict[Position, MatrixQ] = field(default_factory=dict)

    def dim(self, p: int, q: int) -> int:
        return self.nodes.get((p, q), 0)

    @property
    def support(self) -> List[Position]:
        return sorted(pos for pos, n in self.nodes.items() if n > 0)

    def vertical(self, p: int, q: int) -> MatrixQ:
        matrix = self.d1.get((p, q))
        return matrix if matrix is not None else MatrixQ.zeros(self.dim(p, q + 1), self.dim(p, q))

    def horizontal(self, p: int, q: int) -> MatrixQ:
        matrix = self.d2.get((p, q))
        return matrix if matrix is not None else MatrixQ.zeros(self.dim(p + 1, q), self.dim(p, q))

    def validate(self) -> "DoubleComplex":
        for (p, q) in self.d1:
            m = self.d1[(p, q)]
            if (m.rows, m.cols) != (self.dim(p, q + 1), self.dim(p, q)):
                raise ValueError(f"d1 at ({p},{q}) has shape {m.rows}x{m.cols}")
        for (p, q) in self.d2:
            m = self.d2[(p, q)]
            if (m.rows, m.cols) != (self.dim(p + 1, q), self.dim(p, q)):
                raise ValueError(f"d2 at ({p},{q}) has shape {m.rows}x{m.cols}")
        for (p, q) in self.support:
            if not (self.vertical(p, q + 1) @ self.vertical(p, q)).is_zero():
                raise InvariantViolation(f"d1∘d1 ≠ 0 at ({p},{q})")
            if not (self.horizontal(p + 1, q) @ self.horizontal(p, q)).is_zero():
                raise InvariantViolation(f"d2∘d2 ≠ 0 at ({p},{q})")
            if self.horizontal(p, q + 1) @ self.vertical(p, q) != self.vertical(p + 1, q) @ self.horizontal(p, q):
                raise InvariantViolation(f"d1 and d2 do not commute at ({p},{q})")
        return self

    @property
    def p_range(self) -> range:
        ps = [p for p, _ in self.support]
        return range(min(ps), max(ps) + 1) if ps else range(0)

    @property
    def total_range(self) -> range:
        ns = [p + q for p, q in self.support]
        return range(min(ns), max(ns) + 1) if ns else range(0)

    def column(self, p: int) -> FiniteComplex:
        """The vertical complex K^{p,*} with differential d1"""
        qs = [q for (pp, q) in self.support if pp == p]
        if not qs:
            return FiniteComplex(0, (), ())
        dims = {q: self.dim(p, q) for q in range(min(qs), max(qs) + 1)}
        return FiniteComplex.from_dict(dims, {q: self.vertical(p, q) for q in range(min(qs), max(qs))})


@dataclass(frozen=True)
class TotalBlock:
    p: int
    offset: int
    size: int


def total_layout(K: DoubleComplex) -> Dict[int, List[TotalBlock]]:
    """Blocks of each total degree n, ordered by increasing p"""
    layout: Dict[int, List[TotalBlock]] = {}
    for n in K.total_range:
        offset = 0
        blocks = []
        for p in K.p_range:
            size = K.dim(p, n - p)
            if size:
                blocks.append(TotalBlock(p, offset, size))
                offset += size
        layout[n] = blocks
    return layout


def total_complex(K: DoubleComplex) -> FiniteComplex:
    """
    Tot(K) with node(n) = ⊕_{p+q=n} K^{p,q} and δ = (-1)^p d1 + d2.

    d1 and d2 commute, so the sign goes on the map that keeps p fixed.
    """
    layout = total_layout(K)
    if not layout:
        return FiniteComplex(0, (), ())
    dims = {n: sum(b.size for b in blocks) for n, blocks in layout.items()}
    maps: Dict[int, MatrixQ] = {}
    for n in list(layout)[:-1]:
        grid = [[ZERO] * dims[n] for _ in range(dims[n + 1])]
        targets = {b.p: b for b in layout[n + 1]}
        for block in layout[n]:
            p, q = block.p, n - block.p
            sign = ONE if p % 2 == 0 else -ONE
            pieces = [(targets.get(p), K.vertical(p, q), sign), (targets.get(p + 1), K.horizontal(p, q), ONE)]
            for target, matrix, factor in pieces:
                if target is None:
                    continue
                for i in range(target.size):
                    for j in range(block.size):
                        value = matrix[i, j]
                        if value:
                            grid[target.offset + i][block.offset + j] += factor * value
        maps[n] = MatrixQ.from_rows(grid, cols=dims[n])
    return FiniteComplex.from_dict(dims, maps)
