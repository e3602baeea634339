# app/core/boundary/polymatrix.py
"""
Matrices with entries in a sympy polynomial ring over Q.
"""
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from sympy.polys.rings import PolyElement, PolyRing

from app.core.exactalg import MatrixPolyUni
from app.core.groebner import format_poly, to_domain, total_degree


def _coerce(ring: PolyRing, value) -> PolyElement:
    if isinstance(value, PolyElement):
        return value.set_ring(ring)
    return ring(to_domain(value))


@dataclass(frozen=True)
class PolyMatrix:
    ring: PolyRing
    rows: int
    cols: int
    entries: Tuple[Tuple[PolyElement, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"entry grid does not match {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence], cols: int = None) -> "PolyMatrix":
        entries = tuple(tuple(_coerce(ring, v) for v in row) for row in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(ring, len(entries), cols, entries)

    @classmethod
    def zeros(cls, ring: PolyRing, rows: int, cols: int) -> "PolyMatrix":
        return cls(ring, rows, cols, tuple((ring.zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "PolyMatrix":
        return cls(ring, n, n, tuple(tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, ring: PolyRing, values: Sequence) -> "PolyMatrix":
        n = len(values)
        return cls(ring, n, n, tuple(
            tuple(_coerce(ring, values[i]) if i == j else ring.zero for j in range(n)) for i in range(n)
        ))

    @classmethod
    def blocks(cls, ring: PolyRing, grid: Sequence[Sequence["PolyMatrix"]]) -> "PolyMatrix":
        """Assemble a block matrix; blocks in a row share their row count"""
        rows: List[Tuple[PolyElement, ...]] = []
        for block_row in grid:
            for i in range(block_row[0].rows):
                rows.append(tuple(e for block in block_row for e in block.entries[i]))
        cols = sum(block.cols for block in grid[0]) if grid else 0
        return cls(ring, len(rows), cols, tuple(rows))

    def __getitem__(self, index: Tuple[int, int]) -> PolyElement:
        i, j = index
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # ========================================
    # Arithmetic
    # ========================================

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        grid = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self.ring.zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc += a * b
                row.append(acc)
            grid.append(tuple(row))
        return PolyMatrix(self.ring, self.rows, other.cols, tuple(grid))

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same_shape(other)
        return PolyMatrix(self.ring, self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "PolyMatrix":
        return self.scale(-1)

    def scale(self, factor) -> "PolyMatrix":
        if isinstance(factor, PolyElement):
            value = factor
        else:
            value = self.ring(to_domain(factor))
        return PolyMatrix(self.ring, self.rows, self.cols, tuple(tuple(e * value for e in row) for row in self.entries))

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def kron(self, other: "PolyMatrix") -> "PolyMatrix":
        """Kronecker product; index (i, k) becomes i·other.rows + k"""
        grid = []
        for i in range(self.rows):
            for k in range(other.rows):
                grid.append(tuple(
                    self.entries[i][j] * other.entries[k][l]
                    for j in range(self.cols) for l in range(other.cols)
                ))
        return PolyMatrix(self.ring, self.rows * other.rows, self.cols * other.cols, tuple(grid))

    def permute(self, row_order: Sequence[int], col_order: Sequence[int]) -> "PolyMatrix":
        """result[i, j] = self[row_order[i], col_order[j]]"""
        return PolyMatrix(self.ring, len(row_order), len(col_order), tuple(
            tuple(self.entries[i][j] for j in col_order) for i in row_order
        ))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return self.permute(rows, cols)

    def diff(self, index: int) -> "PolyMatrix":
        x = self.ring.gens[index]
        return PolyMatrix(self.ring, self.rows, self.cols, tuple(tuple(e.diff(x) for e in row) for row in self.entries))

    def trace(self) -> PolyElement:
        return sum((self.entries[i][i] for i in range(min(self.rows, self.cols))), self.ring.zero)

    def max_degree(self) -> int:
        """Largest total degree of an entry, -1 for the zero matrix"""
        return max((total_degree(e) for row in self.entries for e in row), default=-1)

    def _check_same_shape(self, other: "PolyMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    # ========================================
    # Conversions
    # ========================================

    def to_univariate(self) -> MatrixPolyUni:
        if self.ring.ngens != 1:
            raise ValueError("univariate conversion needs a ring with one variable")
        return MatrixPolyUni(self.ring, self.rows, self.cols, self.entries)

    def to_strings(self) -> List[List[str]]:
        return [[format_poly(e) for e in row] for row in self.entries]
