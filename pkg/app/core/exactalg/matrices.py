# app/core/exactalg/matrices.py
"""
Exact rational matrices and Gaussian elimination.

Matrices are stored as dense grids of Fractions; elimination works on
sparse row dictionaries so that the large, very sparse maps coming from
truncated polynomial complexes stay cheap.
"""
from bisect import insort
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]
SparseRow = Dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def to_sparse(values: Sequence) -> SparseRow:
    return {i: as_fraction(v) for i, v in enumerate(values) if v != 0}


def from_sparse(row: SparseRow, length: int) -> Vector:
    return tuple(row.get(i, ZERO) for i in range(length))


def add_scaled(target: SparseRow, source: SparseRow, factor: Fraction) -> None:
    """target += factor * source, in place"""
    if not factor:
        return
    for col, value in source.items():
        new = target.get(col, ZERO) + factor * value
        if new:
            target[col] = new
        else:
            target.pop(col, None)


def scale_sparse(row: SparseRow, factor: Fraction) -> SparseRow:
    if not factor:
        return {}
    return {col: value * factor for col, value in row.items()}


@dataclass(frozen=True)
class MatrixQ:
    """Dense rational matrix"""
    rows: int
    cols: int
    entries: Tuple[Vector, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"entry grid does not match {self.rows}x{self.cols}")

    # ========================================
    # Construction
    # ========================================

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "MatrixQ":
        entries = tuple(tuple(as_fraction(v) for v in row) for row in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "MatrixQ":
        grid = [[ZERO] * len(columns) for _ in range(rows)]
        for j, column in enumerate(columns):
            for i, value in enumerate(column):
                grid[i][j] = as_fraction(value)
        return cls(rows, len(columns), tuple(tuple(r) for r in grid))

    @classmethod
    def from_sparse_columns(cls, columns: Sequence[SparseRow], rows: int) -> "MatrixQ":
        grid = [[ZERO] * len(columns) for _ in range(rows)]
        for j, column in enumerate(columns):
            for i, value in column.items():
                grid[i][j] = value
        return cls(rows, len(columns), tuple(tuple(r) for r in grid))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixQ":
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        return cls(n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    # ========================================
    # Access
    # ========================================

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def sparse_rows(self) -> List[SparseRow]:
        return [to_sparse(row) for row in self.entries]

    def sparse_columns(self) -> List[SparseRow]:
        return [to_sparse(self.column(j)) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # ========================================
    # Arithmetic
    # ========================================

    def transpose(self) -> "MatrixQ":
        return MatrixQ(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        right = other.sparse_rows()
        grid = []
        for row in self.entries:
            acc: SparseRow = {}
            for k, value in enumerate(row):
                if value:
                    add_scaled(acc, right[k], value)
            grid.append(from_sparse(acc, other.cols))
        return MatrixQ(self.rows, other.cols, tuple(grid))

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        self._check_same_shape(other)
        return MatrixQ(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        self._check_same_shape(other)
        return MatrixQ(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)
        ))

    def __neg__(self) -> "MatrixQ":
        return self.scale(-ONE)

    def scale(self, factor) -> "MatrixQ":
        factor = as_fraction(factor)
        return MatrixQ(self.rows, self.cols, tuple(tuple(v * factor for v in row) for row in self.entries))

    def apply(self, vector: Sequence) -> Vector:
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} does not fit {self.cols} columns")
        return tuple(sum((a * as_fraction(b) for a, b in zip(row, vector) if a and b), ZERO) for row in self.entries)

    def hstack(self, other: "MatrixQ") -> "MatrixQ":
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return MatrixQ(self.rows, self.cols + other.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def vstack(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        return MatrixQ(self.rows + other.rows, self.cols, self.entries + other.entries)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "MatrixQ":
        return MatrixQ(len(rows), len(cols), tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def _check_same_shape(self, other: "MatrixQ") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    # ========================================
    # Invariants
    # ========================================

    def rank(self) -> int:
        return len(_eliminate(self.sparse_rows())[1])

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        grid = [list(row) for row in self.entries]
        n = self.rows
        det = ONE
        for col in range(n):
            pivot = next((i for i in range(col, n) if grid[i][col]), None)
            if pivot is None:
                return ZERO
            if pivot != col:
                grid[col], grid[pivot] = grid[pivot], grid[col]
                det = -det
            det *= grid[col][col]
            inv = ONE / grid[col][col]
            for i in range(col + 1, n):
                factor = grid[i][col] * inv
                if factor:
                    for j in range(col, n):
                        grid[i][j] -= factor * grid[col][j]
        return det

    def inverse(self) -> "MatrixQ":
        result = rref(self)
        if not self.is_square() or result.rank != self.rows:
            raise ValueError("matrix is not invertible")
        return result.transform

    def to_strings(self) -> List[List[str]]:
        return [[str(v) for v in row] for row in self.entries]


@dataclass(frozen=True)
class RrefResult:
    """Reduced row-echelon form with the recorded row operations"""
    reduced: MatrixQ
    rank: int
    pivots: Tuple[int, ...]
    nullspace: Tuple[Vector, ...]
    transform: MatrixQ  # transform @ M == reduced


def _eliminate(rows: List[SparseRow], ops: Optional[List[SparseRow]] = None) -> Tuple[List[SparseRow], List[int]]:
    """
    Gauss-Jordan elimination in place with deterministic pivot order
    (leftmost column first, topmost candidate row first).

    Returns the reordered rows and the pivot columns; rows[k] has pivot pivots[k].
    """
    columns = sorted({col for row in rows for col in row})
    pivots: List[int] = []
    r = 0
    for col in columns:
        if r == len(rows):
            break
        pivot_row = next((i for i in range(r, len(rows)) if col in rows[i]), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            if ops is not None:
                ops[r], ops[pivot_row] = ops[pivot_row], ops[r]
        inv = ONE / rows[r][col]
        rows[r] = scale_sparse(rows[r], inv)
        if ops is not None:
            ops[r] = scale_sparse(ops[r], inv)
        for i in range(len(rows)):
            if i != r and col in rows[i]:
                factor = -rows[i][col]
                add_scaled(rows[i], rows[r], factor)
                if ops is not None:
                    add_scaled(ops[i], ops[r], factor)
        pivots.append(col)
        r += 1
    return rows, pivots


def _nullspace_from_reduced(rows: List[SparseRow], pivots: List[int], cols: int) -> List[Vector]:
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vector = [ZERO] * cols
        vector[free] = ONE
        for k, pivot in enumerate(pivots):
            value = rows[k].get(free)
            if value:
                vector[pivot] = -value
        basis.append(tuple(vector))
    return basis


def rref(matrix: MatrixQ) -> RrefResult:
    """
    Reduced row-echelon form over Q.

    Args:
        matrix: any rational matrix

    Returns:
        RrefResult with rank, pivot columns, a nullspace basis (one vector per
        free column, free variable set to 1) and the transform T with T·M = R.
    """
    rows = matrix.sparse_rows()
    ops: List[SparseRow] = [{i: ONE} for i in range(matrix.rows)]
    rows, pivots = _eliminate(rows, ops)
    reduced = MatrixQ(matrix.rows, matrix.cols, tuple(from_sparse(r, matrix.cols) for r in rows))
    transform = MatrixQ(matrix.rows, matrix.rows, tuple(from_sparse(o, matrix.rows) for o in ops))
    return RrefResult(
        reduced=reduced,
        rank=len(pivots),
        pivots=tuple(pivots),
        nullspace=tuple(_nullspace_from_reduced(rows, pivots, matrix.cols)),
        transform=transform,
    )


def nullspace(matrix: MatrixQ) -> List[Vector]:
    rows, pivots = _eliminate(matrix.sparse_rows())
    return _nullspace_from_reduced(rows, pivots, matrix.cols)


def sparse_nullspace(rows: List[SparseRow], cols: int) -> List[SparseRow]:
    """Nullspace of a matrix given by sparse rows, as sparse vectors"""
    rows, pivots = _eliminate([dict(r) for r in rows])
    return [to_sparse(v) for v in _nullspace_from_reduced(rows, pivots, cols)]


def sparse_rank(rows: List[SparseRow]) -> int:
    return len(_eliminate([dict(r) for r in rows])[1])


def solve(matrix: MatrixQ, rhs: Sequence) -> Optional[Vector]:
    """One solution x of M·x = rhs, or None when the system is inconsistent"""
    augmented = matrix.hstack(MatrixQ.from_columns([rhs], matrix.rows))
    rows, pivots = _eliminate(augmented.sparse_rows())
    if matrix.cols in pivots:
        return None
    solution = [ZERO] * matrix.cols
    for k, pivot in enumerate(pivots):
        solution[pivot] = rows[k].get(matrix.cols, ZERO)
    return tuple(solution)


# ========================================
# Incremental echelon basis
# ========================================

class EchelonBasis:
    """
    Echelon basis of a growing subspace of Q^n.

    Every stored row remembers how it is combined from the generators that
    were accepted by add(), so reductions come with certificates.
    """

    def __init__(self, dimension: int):
        self.dimension = dimension
        self._pivots: List[int] = []
        self._rows: Dict[int, SparseRow] = {}
        self._certificates: Dict[int, SparseRow] = {}
        self.generators: List[SparseRow] = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, vector: SparseRow) -> Tuple[SparseRow, SparseRow]:
        """
        Returns (remainder, combination) with
        vector = remainder + Σ combination[g] · generators[g].
        """
        remainder = dict(vector)
        combination: SparseRow = {}
        for pivot in self._pivots:
            value = remainder.get(pivot)
            if value:
                add_scaled(remainder, self._rows[pivot], -value)
                add_scaled(combination, self._certificates[pivot], value)
        return remainder, combination

    def contains(self, vector: SparseRow) -> bool:
        return not self.reduce(vector)[0]

    def add(self, vector: SparseRow) -> Optional[int]:
        """Add a generator; returns its index, or None when it is dependent"""
        remainder, combination = self.reduce(vector)
        if not remainder:
            return None
        index = len(self.generators)
        self.generators.append(dict(vector))
        certificate = scale_sparse(combination, -ONE)
        certificate[index] = ONE
        pivot = min(remainder)
        inv = ONE / remainder[pivot]
        self._rows[pivot] = scale_sparse(remainder, inv)
        self._certificates[pivot] = scale_sparse(certificate, inv)
        insort(self._pivots, pivot)
        return index

    def extend(self, vectors: Sequence[SparseRow]) -> List[int]:
        """Add vectors in order; returns the positions of the independent ones"""
        return [k for k, v in enumerate(vectors) if self.add(v) is not None]
