# app/core/category/serre.py
"""
Duality checks on a graded category table: Serre functor S = Σ^d on the
even subcategory, and the Calabi-Yau conditions on the traces.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence

from loguru import logger

from app.core.category.tables import SuperCategoryTable, Vector
from app.core.exceptions import PreconditionFailed
from app.core.exactalg import ZERO, MatrixQ


def _pair(covector: Sequence[Fraction], vector: Sequence[Fraction]) -> Fraction:
    return sum((c * v for c, v in zip(covector, vector) if c and v), ZERO)


@dataclass
class SerreVerdict:
    source: str
    target: str
    matrix: MatrixQ
    rank: int
    identity_holds: bool

    @property
    def nondegenerate(self) -> bool:
        return self.matrix.rows == self.matrix.cols == self.rank

    @property
    def holds(self) -> bool:
        return self.identity_holds and self.nondegenerate

    @property
    def verdict(self) -> str:
        if not self.matrix.rows and not self.matrix.cols:
            return "vacuous"
        return "pass" if self.holds else "fail"


def serre_functor(t: SuperCategoryTable, d: int) -> Dict[str, str]:
    if d % 2 == 0:
        return {a: a for a in t.objects}
    if t.shift is None:
        raise PreconditionFailed("odd signature needs Σ on the object set")
    return dict(t.shift.objects)


def serre_check(t: SuperCategoryTable, d: Optional[int] = None) -> List[SerreVerdict]:
    """
    For S = Σ^d on the even part, check tr_a(g∘f) = tr_b(S(f)∘g) for basis
    f in Hom(a, b), g in Hom(b, Sa), and full rank of ⟨f, g⟩ = tr_b(S(f)∘g).

    Raises:
        PreconditionFailed: traces or shift data are missing
    """
    d = d if d is not None else t.signature
    if d is None:
        raise PreconditionFailed("signature unknown")
    S = serre_functor(t, d)
    if any(a not in t.serre_traces for a in t.objects):
        raise PreconditionFailed("Serre traces are not attached to every object")

    def apply_s(a: str, b: str, f: Vector) -> Vector:
        return t.shift.apply(a, b, f) if d % 2 else f

    verdicts = []
    for a, b in product(t.objects, repeat=2):
        sa, sb = S[a], S[b]
        rows = t.even_indices(a, b)
        cols = t.even_indices(b, sa)
        grid = []
        identity = True
        for i in rows:
            f = t.basis_vector(a, b, i)
            sf = apply_s(a, b, f)
            row = []
            for j in cols:
                g = t.basis_vector(b, sa, j)
                right = _pair(t.serre_traces[b], t.compose(b, sa, sb, sf, g))
                left = _pair(t.serre_traces[a], t.compose(a, b, sa, g, f))
                if left != right:
                    identity = False
                row.append(right)
            grid.append(row)
        matrix = MatrixQ.from_rows(grid, cols=len(cols))
        verdict = SerreVerdict(a, b, matrix, matrix.rank(), identity)
        if verdict.verdict == "fail":
            logger.warning(f"⚠️ Serre check fails on ({a}, {b}): rank {verdict.rank}, identity {identity}")
        verdicts.append(verdict)
    return verdicts


# ========================================
# Calabi-Yau conditions
# ========================================

@dataclass
class CalabiYauVerdict:
    parity_supported: bool
    cyclic: bool
    pairings: Dict[str, MatrixQ]

    @property
    def nondegenerate(self) -> bool:
        return all(m.is_square() and m.rank() == m.rows for m in self.pairings.values())

    @property
    def holds(self) -> bool:
        return self.parity_supported and self.cyclic and self.nondegenerate


def calabi_yau_check(t: SuperCategoryTable) -> CalabiYauVerdict:
    """
    Traces supported in parity d, ⟨f, g⟩ = tr_b(f∘g) graded cyclic and
    nondegenerate on every Hom(a, b) x Hom(b, a).

    Raises:
        PreconditionFailed: the table carries no traces
    """
    if any(a not in t.traces for a in t.objects) or t.signature is None:
        raise PreconditionFailed("trace covectors are not attached")
    supported = all(
        not value or t.parities[(a, a)][k] == t.signature
        for a in t.objects
        for k, value in enumerate(t.traces[a])
    )
    cyclic = True
    pairings: Dict[str, MatrixQ] = {}
    for a, b in product(t.objects, repeat=2):
        grid = []
        for i, pf in enumerate(t.parities[(a, b)]):
            f = t.basis_vector(a, b, i)
            row = []
            for j, pg in enumerate(t.parities[(b, a)]):
                g = t.basis_vector(b, a, j)
                value = _pair(t.traces[b], t.compose(b, a, b, f, g))
                swapped = _pair(t.traces[a], t.compose(a, b, a, g, f))
                if value != (-1 if pf * pg else 1) * swapped:
                    cyclic = False
                row.append(value)
            grid.append(row)
        pairings[f"{a},{b}"] = MatrixQ.from_rows(grid, cols=t.dim(b, a))
    verdict = CalabiYauVerdict(supported, cyclic, pairings)
    if not verdict.holds:
        logger.warning(
            f"⚠️ Calabi-Yau check: parity {supported}, cyclic {cyclic}, nondegenerate {verdict.nondegenerate}"
        )
    return verdict
