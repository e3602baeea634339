# app/core/boundary/factorization.py
"""
Finite-rank matrix factorizations D² = W·id of a polynomial W.

E = E⁰ ⊕ E¹ with the even basis first, D = [[0, G], [F, 0]] where
F: E⁰ -> E¹ is r1 x r0 and G: E¹ -> E⁰ is r0 x r1.
"""
from dataclasses import dataclass, field
from typing import List, Tuple

from loguru import logger
from sympy.polys.rings import PolyElement

from app.core.boundary.polymatrix import PolyMatrix
from app.core.exceptions import MismatchedPotential, NotAFactorization
from app.core.groebner import format_poly


@dataclass(frozen=True)
class MatrixFactorization:
    W: PolyElement
    F: PolyMatrix
    G: PolyMatrix
    name: str = field(default="", compare=False)

    @property
    def ring(self):
        return self.W.ring

    @property
    def r0(self) -> int:
        return self.F.cols

    @property
    def r1(self) -> int:
        return self.F.rows

    @property
    def rank(self) -> Tuple[int, int]:
        return self.r0, self.r1

    @property
    def size(self) -> int:
        return self.r0 + self.r1

    @property
    def parities(self) -> Tuple[int, ...]:
        return (0,) * self.r0 + (1,) * self.r1

    @property
    def D(self) -> PolyMatrix:
        R = self.ring
        return PolyMatrix.blocks(R, [
            [PolyMatrix.zeros(R, self.r0, self.r0), self.G],
            [self.F, PolyMatrix.zeros(R, self.r1, self.r1)],
        ])

    @property
    def grading(self) -> PolyMatrix:
        """J = diag(1, ..., 1, -1, ..., -1)"""
        return PolyMatrix.diagonal(self.ring, [1] * self.r0 + [-1] * self.r1)

    def label(self) -> str:
        return self.name or f"rank ({self.r0}|{self.r1})"


ShiftedMF = MatrixFactorization


def mf_validate(r0: int, r1: int, F: PolyMatrix, G: PolyMatrix, W: PolyElement, name: str = "") -> MatrixFactorization:
    """
    Raises:
        NotAFactorization: wrong block shapes, or GF ≠ W·I or FG ≠ W·I
    """
    if (F.rows, F.cols) != (r1, r0) or (G.rows, G.cols) != (r0, r1):
        raise NotAFactorization(
            f"blocks {F.rows}x{F.cols} and {G.rows}x{G.cols} do not fit rank ({r0}|{r1})"
        )
    R = W.ring
    F = PolyMatrix.from_rows(R, F.entries, cols=F.cols)
    G = PolyMatrix.from_rows(R, G.entries, cols=G.cols)
    for product, n, label in ((G @ F, r0, "G·F"), (F @ G, r1, "F·G")):
        for i in range(n):
            for j in range(n):
                expected = W if i == j else R.zero
                if product[i, j] != expected:
                    raise NotAFactorization(
                        f"{label} entry ({i},{j}) is {format_poly(product[i, j])}, expected {format_poly(expected)}"
                    )
    return MatrixFactorization(W, F, G, name)


def same_potential(*objects: MatrixFactorization) -> None:
    """
    Raises:
        MismatchedPotential: objects live in different rings or factor different W
    """
    first = objects[0]
    for other in objects[1:]:
        if other.ring != first.ring or other.W != first.W:
            raise MismatchedPotential(
                f"{other.label()} factors {format_poly(other.W)}, {first.label()} factors {format_poly(first.W)}"
            )


# ========================================
# Constructions
# ========================================

def tensor_mf(a: MatrixFactorization, b: MatrixFactorization) -> MatrixFactorization:
    """
    External tensor product: D = D_a ⊗ 1 + J_a ⊗ D_b, reordered even-first.
    Factorizes W_a + W_b.
    """
    if a.ring != b.ring:
        raise MismatchedPotential("tensor factors must share a ring")
    R = a.ring
    D = a.D.kron(PolyMatrix.identity(R, b.size)) + a.grading.kron(b.D)
    parities = [pa ^ pb for pa in a.parities for pb in b.parities]
    order = [k for k, p in enumerate(parities) if p == 0] + [k for k, p in enumerate(parities) if p == 1]
    r0 = parities.count(0)
    r1 = len(parities) - r0
    D = D.permute(order, order)
    F = D.submatrix(range(r0, r0 + r1), range(r0))
    G = D.submatrix(range(r0), range(r0, r0 + r1))
    name = f"{a.name}⊗{b.name}" if a.name and b.name else ""
    result = mf_validate(r0, r1, F, G, a.W + b.W, name)
    logger.debug(f"tensor product of rank {a.rank} and {b.rank}: rank {result.rank}")
    return result


def shift_order(a: MatrixFactorization) -> List[int]:
    """Basis of ΠE in terms of E: odd vectors first"""
    return list(range(a.r0, a.size)) + list(range(a.r0))


def shift_mf(a: MatrixFactorization) -> ShiftedMF:
    """Σ(E, D) = (ΠE, ΠD): blocks F and G trade places"""
    name = a.name[1:] if a.name.startswith("Σ") else (f"Σ{a.name}" if a.name else "")
    return MatrixFactorization(a.W, a.G, a.F, name)
