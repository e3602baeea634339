# app/core/boundary/hom_complex.py
"""
2-periodic Hom complexes between matrix factorizations.

Hom(E1, E2) is the space of n2 x n1 polynomial matrices; entry (i, j) has
parity rowblock(i) XOR colblock(j). The defect differential on a degree-κ
element is

    𝔡(f) = D2·f - (-1)^κ f·D1
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger
from sympy.polys.rings import PolyElement

from app.core.boundary.factorization import MatrixFactorization, same_potential
from app.core.boundary.polymatrix import PolyMatrix
from app.core.exceptions import InvariantViolation, NotACocycle

Position = Tuple[int, int]


@dataclass(frozen=True)
class Morphism:
    """Homogeneous element of Hom(source, target)"""
    source: MatrixFactorization
    target: MatrixFactorization
    parity: int
    matrix: PolyMatrix


def defect(t: Morphism) -> PolyMatrix:
    sign = -1 if t.parity else 1
    return t.target.D @ t.matrix - (t.matrix @ t.source.D).scale(sign)


def is_cocycle(t: Morphism) -> bool:
    return defect(t).is_zero()


def require_cocycle(t: Morphism, role: str = "element") -> None:
    if not is_cocycle(t):
        raise NotACocycle(
            f"degree-{t.parity} {role} of Hom({t.source.label()}, {t.target.label()}) has nonzero defect"
        )


class HomComplex2P:
    """Hom(a1, a2) split by Z/2-degree, with 𝔡 as polynomial block matrices"""

    def __init__(self, source: MatrixFactorization, target: MatrixFactorization):
        same_potential(source, target)
        self.source = source
        self.target = target
        self.ring = source.ring
        self.positions: Dict[int, List[Position]] = {0: [], 1: []}
        for i, pi in enumerate(target.parities):
            for j, pj in enumerate(source.parities):
                self.positions[pi ^ pj].append((i, j))
        self._differentials = {kappa: self._assemble(kappa) for kappa in (0, 1)}

    def rank(self, kappa: int) -> int:
        return len(self.positions[kappa % 2])

    def differential(self, kappa: int) -> PolyMatrix:
        """𝔡_κ : Hom^κ -> Hom^(κ+1) on coefficient vectors"""
        return self._differentials[kappa % 2]

    @property
    def max_entry_degree(self) -> int:
        return max(self.source.D.max_degree(), self.target.D.max_degree(), 0)

    def _assemble(self, kappa: int) -> PolyMatrix:
        D1, D2 = self.source.D, self.target.D
        sign = -1 if kappa % 2 else 1
        target_index = {pos: k for k, pos in enumerate(self.positions[(kappa + 1) % 2])}
        R = self.ring
        grid = [[R.zero] * self.rank(kappa) for _ in range(self.rank(kappa + 1))]
        for col, (i, j) in enumerate(self.positions[kappa % 2]):
            # D2 · E_ij fills column j from column i of D2
            for k in range(self.target.size):
                value = D2[k, i]
                if value:
                    grid[target_index[(k, j)]][col] += value
            # E_ij · D1 fills row i from row j of D1
            for l in range(self.source.size):
                value = D1[j, l]
                if value:
                    grid[target_index[(i, l)]][col] -= value * sign
        return PolyMatrix.from_rows(R, grid, cols=self.rank(kappa))

    # ========================================
    # Elements
    # ========================================

    def defect(self, f: PolyMatrix, kappa: int) -> PolyMatrix:
        return defect(Morphism(self.source, self.target, kappa % 2, f))

    def to_vector(self, f: PolyMatrix, kappa: int) -> Tuple[PolyElement, ...]:
        return tuple(f[i, j] for i, j in self.positions[kappa % 2])

    def from_vector(self, vector: Sequence[PolyElement], kappa: int) -> PolyMatrix:
        R = self.ring
        grid = [[R.zero] * self.source.size for _ in range(self.target.size)]
        for (i, j), value in zip(self.positions[kappa % 2], vector):
            grid[i][j] = value
        return PolyMatrix.from_rows(R, grid, cols=self.source.size)

    def parity_of(self, f: PolyMatrix) -> Optional[int]:
        """Z/2-degree of f; None when f mixes parities, 0 for the zero matrix"""
        found = {
            kappa for kappa in (0, 1)
            for (i, j) in self.positions[kappa] if f[i, j]
        }
        if len(found) > 1:
            return None
        return found.pop() if found else 0

    def morphism(self, f: PolyMatrix, kappa: Optional[int] = None) -> Morphism:
        parity = self.parity_of(f) if kappa is None else kappa % 2
        if parity is None:
            raise ValueError("morphism is not homogeneous")
        return Morphism(self.source, self.target, parity, f)

    def is_cocycle(self, t: Morphism) -> bool:
        return is_cocycle(t)

    def validate(self) -> "HomComplex2P":
        for kappa in (0, 1):
            if not (self.differential(kappa + 1) @ self.differential(kappa)).is_zero():
                raise InvariantViolation(f"𝔡∘𝔡 ≠ 0 on Hom^{kappa}({self.source.label()}, {self.target.label()})")
        return self


def hom_complex(a1: MatrixFactorization, a2: MatrixFactorization) -> HomComplex2P:
    """
    Raises:
        MismatchedPotential: a1 and a2 factor different potentials
    """
    h = HomComplex2P(a1, a2).validate()
    logger.debug(f"Hom({a1.label()}, {a2.label()}): ranks {h.rank(0)}|{h.rank(1)}")
    return h


def compose(second: Morphism, first: Morphism) -> Morphism:
    """
    second ∘ first on cocycles; parities add.

    Raises:
        NotACocycle: either factor has nonzero defect
    """
    if first.target != second.source:
        raise ValueError("morphisms are not composable")
    for t in (first, second):
        require_cocycle(t, "factor")
    return Morphism(first.source, second.target, (first.parity + second.parity) % 2, second.matrix @ first.matrix)


def identity_morphism(a: MatrixFactorization) -> Morphism:
    return Morphism(a, a, 0, PolyMatrix.identity(a.ring, a.size))
