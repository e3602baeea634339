# app/core/boundary/trace.py
"""
Boundary traces and the boundary Gram pairing.

    tr_a(t) = (1/d!) · λ( str( t · Σ_σ sgn(σ) ∂_σ1 D ··· ∂_σd D ) )

with str the supertrace over E = E⁰ ⊕ E¹ and λ the bulk trace.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import List, Optional, Tuple

from loguru import logger
from sympy.polys.rings import PolyElement

from app.config import settings
from app.core.boundary.cohomology import HDFCohomology, HomBackend, hdf_cohomology
from app.core.boundary.factorization import MatrixFactorization, same_potential
from app.core.boundary.hom_complex import Morphism, compose, hom_complex, require_cocycle
from app.core.boundary.polymatrix import PolyMatrix
from app.core.bulk import BulkTrace
from app.core.exceptions import BackendUnavailable, MismatchedPotential
from app.core.exactalg import MatrixQ
from app.core.groebner import format_poly, monomial, monomials_up_to, permutation_sign, total_degree


def supertrace(a: MatrixFactorization, M: PolyMatrix) -> PolyElement:
    even = sum((M[i, i] for i in range(a.r0)), a.ring.zero)
    odd = sum((M[i, i] for i in range(a.r0, a.size)), a.ring.zero)
    return even - odd


def antisymmetrized_derivatives(a: MatrixFactorization) -> PolyMatrix:
    """Σ_σ sgn(σ) ∂_σ1 D ··· ∂_σd D"""
    d = a.ring.ngens
    partials = [a.D.diff(i) for i in range(d)]
    total = PolyMatrix.zeros(a.ring, a.size, a.size)
    for perm in permutations(range(d)):
        product = PolyMatrix.identity(a.ring, a.size)
        for i in perm:
            product = product @ partials[i]
        total = total + product.scale(permutation_sign(perm))
    return total


class BoundaryTrace:
    """tr_a for one object; the derivative product is assembled once"""

    def __init__(self, a: MatrixFactorization, bulk: BulkTrace):
        d = a.ring.ngens
        if d > settings.MAX_TRACE_DIMENSION:
            raise BackendUnavailable(f"boundary trace enumerates d! terms; d={d} exceeds {settings.MAX_TRACE_DIMENSION}")
        if bulk.algebra is None or bulk.algebra.jd.pair.W != a.W:
            raise MismatchedPotential(f"bulk trace was not built for W = {format_poly(a.W)}")
        self.object = a
        self.bulk = bulk
        self.parity = d % 2
        self._product = antisymmetrized_derivatives(a)
        self._normalizer = Fraction(1, factorial(d))

    def __call__(self, t: Morphism) -> Fraction:
        a = self.object
        if t.source != a or t.target != a:
            raise ValueError(f"trace of {a.label()} takes endomorphisms of {a.label()}")
        require_cocycle(t, "endomorphism")
        return self.evaluate(t.matrix)

    def evaluate(self, matrix: PolyMatrix) -> Fraction:
        """The trace formula without the cocycle check"""
        return self._normalizer * self.bulk.evaluate(supertrace(self.object, matrix @ self._product))


def boundary_trace(a: MatrixFactorization, t: Morphism, bulk: BulkTrace) -> Fraction:
    """
    Raises:
        MismatchedPotential: bulk trace built for another W
        NotACocycle: t has nonzero defect
    """
    return BoundaryTrace(a, bulk)(t)


def coboundary_check(a: MatrixFactorization, bulk: BulkTrace, degree: Optional[int] = None) -> bool:
    """tr_a vanishes on 𝔡(x^m·E_p) for every position p and deg m <= degree"""
    trace = BoundaryTrace(a, bulk)
    h = hom_complex(a, a)
    degree = degree if degree is not None else total_degree(a.W)
    R = a.ring
    for kappa in (0, 1):
        positions = h.rank(kappa + 1)
        for m in monomials_up_to(R.ngens, degree):
            for p in range(positions):
                vector = [R.zero] * positions
                vector[p] = monomial(R, m)
                s = h.from_vector(vector, kappa + 1)
                value = trace.evaluate(h.defect(s, kappa + 1))
                if value:
                    logger.warning(f"⚠️ trace of a coboundary of {a.label()} is {value}")
                    return False
    return True


# ========================================
# Gram pairing
# ========================================

@dataclass
class BoundaryGram:
    """⟨t1, t2⟩ = tr_a2(t1·t2) on H(Hom(a1, a2)) x H(Hom(a2, a1))"""
    matrix: MatrixQ
    row_parities: Tuple[int, ...]
    col_parities: Tuple[int, ...]
    rank: int
    cyclic: bool
    parity_selected: bool
    forward: HDFCohomology
    backward: HDFCohomology

    @property
    def nondegenerate(self) -> bool:
        return self.matrix.rows == self.matrix.cols == self.rank

    @property
    def verdict(self) -> str:
        return "nondegenerate" if self.nondegenerate else "degenerate"


def boundary_gram(
    a1: MatrixFactorization,
    a2: MatrixFactorization,
    bulk: BulkTrace,
    backend: Optional[HomBackend] = None,
    truncation: Optional[int] = None,
) -> BoundaryGram:
    same_potential(a1, a2)
    forward = hdf_cohomology(hom_complex(a1, a2), backend, truncation)
    backward = hdf_cohomology(hom_complex(a2, a1), backend, truncation)
    tr1 = BoundaryTrace(a1, bulk)
    tr2 = tr1 if a2 == a1 else BoundaryTrace(a2, bulk)
    rows_basis = forward.basis()
    cols_basis = backward.basis()
    grid: List[List[Fraction]] = []
    cyclic = True
    selected = True
    signature = tr1.parity
    for t1 in rows_basis:
        row = []
        for t2 in cols_basis:
            value = tr2(compose(t1, t2))
            swapped = tr1(compose(t2, t1))
            sign = -1 if t1.parity * t2.parity else 1
            if value != sign * swapped:
                cyclic = False
            if (t1.parity + t2.parity) % 2 != signature and value:
                selected = False
            row.append(value)
        grid.append(row)
    matrix = MatrixQ.from_rows(grid, cols=len(cols_basis))
    gram = BoundaryGram(
        matrix=matrix,
        row_parities=tuple(t.parity for t in rows_basis),
        col_parities=tuple(t.parity for t in cols_basis),
        rank=matrix.rank(),
        cyclic=cyclic,
        parity_selected=selected,
        forward=forward,
        backward=backward,
    )
    if not gram.nondegenerate:
        logger.warning(f"⚠️ boundary pairing of {a1.label()} and {a2.label()} has rank {gram.rank}")
    if not cyclic:
        logger.warning(f"⚠️ boundary pairing of {a1.label()} and {a2.label()} is not graded cyclic")
    return gram
