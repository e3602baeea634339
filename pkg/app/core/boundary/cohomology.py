# app/core/boundary/cohomology.py
"""
Cohomology of 2-periodic Hom complexes.

Two backends:
  - snf: exact over Q[x] through Smith normal forms of 𝔡 (one variable only)
  - truncate: polynomial degree <= N in every entry, audited at N and N + deg W
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger
from sympy.polys.rings import PolyElement

from app.config import settings
from app.core.boundary.hom_complex import HomComplex2P, Morphism, compose, require_cocycle
from app.core.boundary.polymatrix import PolyMatrix
from app.core.exceptions import (
    BackendUnavailable,
    InvariantViolation,
    NotZeroDimensional,
    ReductionFailed,
)
from app.core.exactalg import ZERO, smith_normal_form, sparse_nullspace
from app.core.exactalg.matrices import SparseRow
from app.core.groebner import coefficient, from_terms, monomials_up_to, to_terms, total_degree
from app.core.homology import QuotientSpace

Vector = Tuple[Fraction, ...]


class HomBackend(str, Enum):
    AUTO = "auto"
    SNF = "snf"
    TRUNCATE = "truncate"


class HDFPart(ABC):
    """One parity of H(Hom(a1, a2)): representatives plus a reduction map"""

    parity: int
    representatives: List[PolyMatrix]

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    @abstractmethod
    def coordinates(self, vector: Sequence[PolyElement]) -> Vector:
        """Coordinates of the class of a cocycle, given as a coefficient vector"""


# ========================================
# Smith normal form backend
# ========================================

class SnfPart(HDFPart):
    """
    With U·A·V = diag for A = 𝔡_κ of rank r, the cocycles are K = V[:, r:].
    Boundaries in K-coordinates are C = (V⁻¹·𝔡_(κ+1))[r:, :], and
    H^κ = ⊕ Q[x]/(c_i) over the invariant factors of C.
    """

    def __init__(self, h: HomComplex2P, kappa: int):
        self.parity = kappa % 2
        self.ring = h.ring
        n = h.rank(kappa)
        self._factors: List[Tuple[int, PolyElement]] = []
        self.representatives = []
        if n == 0:
            return
        A = h.differential(kappa).to_univariate()
        B = h.differential(kappa + 1).to_univariate()
        snf_a = smith_normal_form(A)
        self._r = r = snf_a.rank
        self._v_inv = snf_a.v_inv
        k = n - r
        if k == 0:
            return
        kernel = snf_a.v.submatrix(range(n), range(r, n))
        moved = snf_a.v_inv @ B
        if any(moved[i, j] for i in range(r) for j in range(moved.cols)):
            raise InvariantViolation("image of 𝔡 is not contained in its kernel")
        C = moved.submatrix(range(r, n), range(moved.cols))
        snf_c = smith_normal_form(C)
        if snf_c.rank < k:
            raise NotZeroDimensional(
                f"H^{self.parity}(Hom({h.source.label()}, {h.target.label()})) is infinite-dimensional"
            )
        self._u = snf_c.u
        x = self.ring.gens[0]
        for i in range(k):
            c = snf_c.d[i, i]
            if c.degree() > 0:
                self._factors.append((i, c))
                column = tuple(snf_c.u_inv[row, i] for row in range(k))
                base = kernel.apply(column)
                for j in range(c.degree()):
                    self.representatives.append(h.from_vector([p * x**j for p in base], kappa))
        logger.debug(f"snf H^{self.parity}: invariant factors {[str(c) for _, c in self._factors]}")

    def coordinates(self, vector: Sequence[PolyElement]) -> Vector:
        if not self._factors:
            return ()
        z = tuple(vector)
        y_full = self._v_inv.apply(z)
        if any(y_full[: self._r]):
            raise ReductionFailed("vector is not a cocycle")
        w = self._u.apply(y_full[self._r:])
        coords: List[Fraction] = []
        for i, c in self._factors:
            remainder = w[i] % c
            coords.extend(coefficient(remainder, (j,)) for j in range(c.degree()))
        return tuple(coords)


# ========================================
# Truncation backend
# ========================================

class TruncatedPart(HDFPart):
    """
    H^κ_N = Z_N / B_N with Z_N = ker(𝔡: F_N -> F_(N+e)) and
    B_N = 𝔡(F_(N-e)), where F_n holds entries of degree <= n and e is the
    largest entry degree of the two differentials D.

    Coordinates are ordered by increasing polynomial degree, so the chosen
    representatives are degree-minimal.
    """

    def __init__(self, h: HomComplex2P, kappa: int, bound: int):
        self.parity = kappa % 2
        self.bound = bound
        self._h = h
        nvars = h.ring.ngens
        e = h.max_entry_degree
        positions = h.rank(kappa)
        self._monomials = monomials_up_to(nvars, bound)
        self._index = {
            (m, p): k * positions + p for k, m in enumerate(self._monomials) for p in range(positions)
        }
        size = len(self._monomials) * positions

        outgoing = self._columns(h.differential(kappa), monomials_up_to(nvars, bound), bound + e)
        rows: Dict[int, SparseRow] = {}
        for col, column in enumerate(outgoing):
            for row, value in column.items():
                rows.setdefault(row, {})[col] = value
        cocycles = sparse_nullspace(list(rows.values()), size)

        incoming_monomials = monomials_up_to(nvars, bound - e) if bound >= e else []
        boundaries = [
            c for c in self._columns(h.differential(kappa + 1), incoming_monomials, bound, self._index) if c
        ]
        self._quotient = QuotientSpace(size, cocycles, boundaries)
        self.representatives = [self._to_matrix(v) for v in self._quotient.representatives]

    def _columns(self, matrix: PolyMatrix, monomials, target_bound: int, index=None) -> List[SparseRow]:
        """Images of x^m·e_p under a polynomial matrix, in the degree <= target_bound basis"""
        if index is None:
            target_monomials = monomials_up_to(self._h.ring.ngens, target_bound)
            positions = matrix.rows
            index = {(m, q): k * positions + q for k, m in enumerate(target_monomials) for q in range(positions)}
        entries = [[to_terms(matrix[q, p]) for q in range(matrix.rows)] for p in range(matrix.cols)]
        columns = []
        for m in monomials:
            for p in range(matrix.cols):
                column: SparseRow = {}
                for q, terms in enumerate(entries[p]):
                    for exps, c in terms.items():
                        row = index[(tuple(a + b for a, b in zip(exps, m)), q)]
                        column[row] = column.get(row, ZERO) + c
                columns.append({r: v for r, v in column.items() if v})
        return columns

    def _to_matrix(self, vector: SparseRow) -> PolyMatrix:
        positions = self._h.rank(self.parity)
        R = self._h.ring
        entries = [R.zero] * positions
        for k, value in vector.items():
            m, p = self._monomials[k // positions], k % positions
            entries[p] += from_terms(R, {m: value})
        return self._h.from_vector(entries, self.parity)

    def coordinates(self, vector: Sequence[PolyElement]) -> Vector:
        sparse: SparseRow = {}
        for p, f in enumerate(vector):
            if total_degree(f) > self.bound:
                raise ReductionFailed(
                    f"entry of degree {total_degree(f)} exceeds the truncation N={self.bound}"
                )
            for exps, c in to_terms(f).items():
                sparse[self._index[(exps, p)]] = c
        coords = self._quotient.coordinates(sparse)
        if coords is None:
            raise ReductionFailed(f"cocycle is not expressible at truncation N={self.bound}")
        return tuple(coords)


# ========================================
# Dispatcher
# ========================================

@dataclass
class HDFCohomology:
    hom: HomComplex2P
    backend: HomBackend
    parts: Dict[int, HDFPart]
    truncation: Optional[int] = None
    low_dims: Optional[Tuple[int, int]] = None

    @property
    def dims(self) -> Tuple[int, int]:
        """(even, odd)"""
        return self.parts[0].dimension, self.parts[1].dimension

    @property
    def stabilized(self) -> bool:
        return self.low_dims is None or self.low_dims == self.dims

    def representatives(self, kappa: int) -> List[Morphism]:
        part = self.parts[kappa % 2]
        return [Morphism(self.hom.source, self.hom.target, part.parity, m) for m in part.representatives]

    def basis(self) -> List[Morphism]:
        """Even representatives first"""
        return self.representatives(0) + self.representatives(1)

    def reduce(self, t: Morphism) -> Vector:
        """
        Coordinates of the class of t in the basis of its parity.

        Raises:
            NotACocycle: t has nonzero defect
            ReductionFailed: the truncated model cannot express t
        """
        if t.source != self.hom.source or t.target != self.hom.target:
            raise ValueError("morphism lives in a different Hom space")
        require_cocycle(t)
        return self.parts[t.parity].coordinates(self.hom.to_vector(t.matrix, t.parity))


def resolve_backend(h: HomComplex2P, backend: Optional[HomBackend] = None) -> HomBackend:
    backend = HomBackend(backend or settings.HOM_BACKEND)
    if backend == HomBackend.AUTO:
        return HomBackend.SNF if h.ring.ngens == 1 else HomBackend.TRUNCATE
    if backend == HomBackend.SNF and h.ring.ngens != 1:
        raise BackendUnavailable(f"snf backend needs one variable, ring has {h.ring.ngens}")
    return backend


def default_truncation(h: HomComplex2P) -> int:
    return max(4, 2 * total_degree(h.source.W))


def hdf_cohomology(
    h: HomComplex2P,
    backend: Optional[HomBackend] = None,
    truncation: Optional[int] = None,
) -> HDFCohomology:
    """
    H^0 and H^1 of Hom(a1, a2) with representatives and reduction maps.

    Args:
        h: the Hom complex
        backend: snf, truncate or auto; defaults to settings.HOM_BACKEND
        truncation: degree bound N for the truncate backend

    Raises:
        BackendUnavailable: snf requested on a multivariate ring
    """
    backend = resolve_backend(h, backend)
    if backend == HomBackend.SNF:
        result = HDFCohomology(h, backend, {kappa: SnfPart(h, kappa) for kappa in (0, 1)})
    else:
        N = truncation or settings.TRUNCATION or default_truncation(h)
        step = total_degree(h.source.W)
        low = tuple(TruncatedPart(h, kappa, N).dimension for kappa in (0, 1))
        parts = {kappa: TruncatedPart(h, kappa, N + step) for kappa in (0, 1)}
        result = HDFCohomology(h, backend, parts, truncation=N, low_dims=low)
        if not result.stabilized:
            logger.warning(f"⚠️ truncated Hom cohomology not stable: {low} at N={N}, {result.dims} at N={N + step}")
    logger.debug(f"H(Hom({h.source.label()}, {h.target.label()})) = {result.dims} via {backend.value}")
    return result


def compose_classes(second: Morphism, first: Morphism, target: HDFCohomology) -> Tuple[Morphism, Vector]:
    """
    Product of two cocycles and the coordinates of its class.

    Raises:
        NotACocycle: either factor has nonzero defect
    """
    product = compose(second, first)
    return product, target.reduce(product)
