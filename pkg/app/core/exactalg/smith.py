# app/core/exactalg/smith.py
"""
Smith normal form over Q[x].

Entries are sympy PolyElements of a one-variable ring over QQ.
Pivot rule: the nonzero entry of least degree in the active submatrix,
ties broken by the lowest (row, col). Invariant factors come out monic
with d_i | d_(i+1).
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from loguru import logger
from sympy.polys.rings import PolyElement, PolyRing


def divides(f: PolyElement, g: PolyElement) -> bool:
    if not f:
        return not g
    return not (g % f)


@dataclass(frozen=True)
class MatrixPolyUni:
    """Dense matrix with entries in Q[x]"""
    ring: PolyRing
    rows: int
    cols: int
    entries: Tuple[Tuple[PolyElement, ...], ...]

    def __post_init__(self):
        if self.ring.ngens != 1:
            raise ValueError("Q[x] matrices need a ring with one variable")
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"entry grid does not match {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence], cols: Optional[int] = None) -> "MatrixPolyUni":
        entries = tuple(tuple(ring(v) for v in row) for row in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(ring, len(entries), cols, entries)

    @classmethod
    def zeros(cls, ring: PolyRing, rows: int, cols: int) -> "MatrixPolyUni":
        return cls(ring, rows, cols, tuple((ring.zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "MatrixPolyUni":
        return cls(ring, n, n, tuple(
            tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n)
        ))

    def __getitem__(self, index: Tuple[int, int]) -> PolyElement:
        i, j = index
        return self.entries[i][j]

    def __matmul__(self, other: "MatrixPolyUni") -> "MatrixPolyUni":
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
        return MatrixPolyUni(self.ring, self.rows, other.cols, tuple(grid))

    def apply(self, vector: Sequence[PolyElement]) -> Tuple[PolyElement, ...]:
        result = []
        for row in self.entries:
            acc = self.ring.zero
            for a, b in zip(row, vector):
                if a and b:
                    acc += a * b
            result.append(acc)
        return tuple(result)

    def is_zero(self) -> bool:
        return not any(entry for row in self.entries for entry in row)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "MatrixPolyUni":
        rows, cols = list(rows), list(cols)
        return MatrixPolyUni(
            self.ring, len(rows), len(cols), tuple(tuple(self.entries[i][j] for j in cols) for i in rows)
        )


@dataclass(frozen=True)
class SmithForm:
    """U·M·V = D, together with the inverses of U and V"""
    u: MatrixPolyUni
    d: MatrixPolyUni
    v: MatrixPolyUni
    u_inv: MatrixPolyUni
    v_inv: MatrixPolyUni

    @property
    def invariant_factors(self) -> List[PolyElement]:
        n = min(self.d.rows, self.d.cols)
        return [self.d[i, i] for i in range(n) if self.d[i, i]]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


class _Workspace:
    """Mutable SNF state; every elementary operation updates the transforms"""

    def __init__(self, matrix: MatrixPolyUni):
        self.ring = matrix.ring
        self.m, self.n = matrix.rows, matrix.cols
        self.a = [list(row) for row in matrix.entries]
        self.u = [list(row) for row in MatrixPolyUni.identity(self.ring, self.m).entries]
        self.u_inv = [list(row) for row in MatrixPolyUni.identity(self.ring, self.m).entries]
        self.v = [list(row) for row in MatrixPolyUni.identity(self.ring, self.n).entries]
        self.v_inv = [list(row) for row in MatrixPolyUni.identity(self.ring, self.n).entries]

    # row operations: A <- R A, U <- R U, U^-1 <- U^-1 R^-1

    def swap_rows(self, i: int, k: int) -> None:
        if i == k:
            return
        for grid in (self.a, self.u):
            grid[i], grid[k] = grid[k], grid[i]
        for row in self.u_inv:
            row[i], row[k] = row[k], row[i]

    def add_row(self, target: int, source: int, factor: PolyElement) -> None:
        """row_target += factor * row_source"""
        for grid in (self.a, self.u):
            grid[target] = [t + factor * s for t, s in zip(grid[target], grid[source])]
        for row in self.u_inv:
            row[source] = row[source] - factor * row[target]

    def scale_row(self, i: int, factor) -> None:
        """factor is a nonzero element of the coefficient domain"""
        for grid in (self.a, self.u):
            grid[i] = [entry * factor for entry in grid[i]]
        inverse = self.ring.domain.one / factor
        for row in self.u_inv:
            row[i] = row[i] * inverse

    # column operations: A <- A C, V <- V C, V^-1 <- C^-1 V^-1

    def swap_cols(self, j: int, l: int) -> None:
        if j == l:
            return
        for grid in (self.a, self.v):
            for row in grid:
                row[j], row[l] = row[l], row[j]
        self.v_inv[j], self.v_inv[l] = self.v_inv[l], self.v_inv[j]

    def add_col(self, target: int, source: int, factor: PolyElement) -> None:
        """col_target += factor * col_source"""
        for grid in (self.a, self.v):
            for row in grid:
                row[target] = row[target] + factor * row[source]
        self.v_inv[source] = [s - factor * t for s, t in zip(self.v_inv[source], self.v_inv[target])]

    def pivot_candidate(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                entry = self.a[i][j]
                if entry and (best is None or entry.degree() < self.a[best[0]][best[1]].degree()):
                    best = (i, j)
        return best

    def freeze(self) -> SmithForm:
        def build(grid, size):
            return MatrixPolyUni(self.ring, size, size, tuple(tuple(row) for row in grid))
        return SmithForm(
            u=build(self.u, self.m),
            d=MatrixPolyUni(self.ring, self.m, self.n, tuple(tuple(row) for row in self.a)),
            v=build(self.v, self.n),
            u_inv=build(self.u_inv, self.m),
            v_inv=build(self.v_inv, self.n),
        )


def smith_normal_form(matrix: MatrixPolyUni) -> SmithForm:
    """
    Smith normal form of a matrix over Q[x].

    Args:
        matrix: m x n matrix of univariate polynomials

    Returns:
        SmithForm with U·M·V = D, U and V invertible over Q[x] (constant
        nonzero determinants), D diagonal with monic d_i and d_i | d_(i+1).
    """
    ws = _Workspace(matrix)
    steps = 0
    for t in range(min(ws.m, ws.n)):
        while True:
            candidate = ws.pivot_candidate(t)
            if candidate is None:
                logger.debug(f"SNF {ws.m}x{ws.n}: rank {t} after {steps} steps")
                return ws.freeze()
            i, j = candidate
            ws.swap_rows(t, i)
            ws.swap_cols(t, j)
            pivot = ws.a[t][t]
            clean = True
            for i in range(t + 1, ws.m):
                if ws.a[i][t]:
                    quotient = ws.a[i][t] // pivot
                    ws.add_row(i, t, -quotient)
                    steps += 1
                    if ws.a[i][t]:
                        clean = False
            for j in range(t + 1, ws.n):
                if ws.a[t][j]:
                    quotient = ws.a[t][j] // pivot
                    ws.add_col(j, t, -quotient)
                    steps += 1
                    if ws.a[t][j]:
                        clean = False
            if not clean:
                continue
            offender = next(
                (i for i in range(t + 1, ws.m) for j in range(t + 1, ws.n)
                 if not divides(pivot, ws.a[i][j])),
                None,
            )
            if offender is None:
                break
            ws.add_row(t, offender, ws.ring.one)
            steps += 1
        ws.scale_row(t, ws.ring.domain.one / ws.a[t][t].LC)
    logger.debug(f"SNF {ws.m}x{ws.n}: full rank after {steps} steps")
    return ws.freeze()
