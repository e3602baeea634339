# app/core/bulk/trace.py
"""
Bulk trace functionals on the Milnor algebra and the Gram pairing
⟨u, v⟩ = λ(u·v).

Residue backend (transformation law):
    g_i(x_i) = Σ_j a_ij ∂_j W   with g_i the eliminant of x_i
    λ(b) = coefficient of Π x_i^(n_i - 1) in  b·det(a) mod (g_1, ..., g_d)
where n_i = deg g_i. The result is the sum of local residues over all
critical points and satisfies λ(Hess W) = μ_W.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from loguru import logger
from sympy.polys.rings import PolyElement

from app.config import settings
from app.core.bulk.milnor import MilnorAlgebra, eliminant, hessian_class, is_local
from app.core.exceptions import InvariantViolation, NotLocal
from app.core.exactalg import ZERO, MatrixQ
from app.core.groebner import coefficient, lift_membership, monomial, poly_det, total_degree

Vector = Tuple[Fraction, ...]


class TraceBackend(str, Enum):
    RESIDUE = "residue"
    SOCLE = "socle"


@dataclass(frozen=True)
class BulkTrace:
    covector: Vector
    backend: TraceBackend
    scale: Fraction
    algebra: Optional[MilnorAlgebra] = field(default=None, compare=False, repr=False)

    def __call__(self, coords: Sequence) -> Fraction:
        return sum((Fraction(c) * v for c, v in zip(coords, self.covector) if c), ZERO)

    def evaluate(self, f: PolyElement) -> Fraction:
        """λ on the class of an arbitrary polynomial"""
        if self.algebra is None:
            raise ValueError("trace was built without its Milnor algebra")
        return self(self.algebra.reduce(f.set_ring(self.algebra.ring)))


@dataclass(frozen=True)
class BulkGram:
    matrix: MatrixQ
    determinant: Fraction

    @property
    def nondegenerate(self) -> bool:
        return self.determinant != 0

    @property
    def symmetric(self) -> bool:
        return self.matrix == self.matrix.transpose()

    @property
    def verdict(self) -> str:
        return "nondegenerate" if self.nondegenerate else "degenerate"


# ========================================
# Backends
# ========================================

def _residue_covector(ma: MilnorAlgebra) -> List[Fraction]:
    ring = ma.ring
    partials = [f.set_ring(ring) for f in ma.jd.partials]
    eliminants = [eliminant(ma, i) for i in range(ring.ngens)]
    rows = [lift_membership(g, partials, gb=ma.jd.groebner) for g in eliminants]
    det = poly_det(rows, ring)
    top = tuple(total_degree(g) - 1 for g in eliminants)
    covector = []
    for b in ma.basis:
        h = det * monomial(ring, b)
        covector.append(coefficient(h.rem(eliminants), top))
    return covector


def _socle_covector(ma: MilnorAlgebra) -> List[Fraction]:
    if not is_local(ma):
        raise NotLocal(f"Milnor algebra of {ma.jd.pair} has critical points away from the origin")
    hess = hessian_class(ma)
    support = [k for k, c in enumerate(hess) if c]
    if not support:
        raise InvariantViolation(f"Hessian of {ma.jd.pair} vanishes in the Milnor algebra")
    order = ma.ring.order
    top = max(support, key=lambda k: order(ma.basis[k]))
    covector = [ZERO] * ma.dimension
    covector[top] = Fraction(ma.dimension) / hess[top]
    return covector


def bulk_trace(
    ma: MilnorAlgebra,
    backend: Optional[TraceBackend] = None,
    scale: Optional[Fraction] = None,
) -> BulkTrace:
    """
    Trace covector on the Milnor algebra basis.

    Args:
        ma: the Milnor algebra
        backend: residue or socle; defaults to settings.TRACE_BACKEND
        scale: volume scale c; the covector scales by c²

    Raises:
        NotLocal: socle backend on an algebra with several critical points
    """
    backend = TraceBackend(backend or settings.TRACE_BACKEND)
    scale = Fraction(scale) if scale is not None else settings.volume_scale
    if scale == 0:
        raise ValueError("volume scale must be nonzero")
    if backend == TraceBackend.RESIDUE:
        base = _residue_covector(ma)
    else:
        base = _socle_covector(ma)
    trace = BulkTrace(tuple(c * scale * scale for c in base), backend, scale, ma)

    normalization = trace(hessian_class(ma))
    expected = ma.dimension * scale * scale
    if normalization != expected:
        raise InvariantViolation(f"λ(Hess W) = {normalization}, expected {expected}")
    logger.debug(f"{backend.value} trace of {ma.jd.pair}: {[str(c) for c in trace.covector]}")
    return trace


# ========================================
# Gram pairing and its identities
# ========================================

def _unit(n: int, k: int) -> Vector:
    return tuple(Fraction(int(i == k)) for i in range(n))


def bulk_gram(ma: MilnorAlgebra, tr: BulkTrace) -> BulkGram:
    n = ma.dimension
    rows = [[tr(ma.table[(a, b)]) for b in range(n)] for a in range(n)]
    matrix = MatrixQ.from_rows(rows, cols=n)
    gram = BulkGram(matrix, matrix.det())
    if not gram.nondegenerate:
        logger.warning(f"⚠️ degenerate Gram matrix for {ma.jd.pair}")
    return gram


def frobenius_check(ma: MilnorAlgebra, tr: BulkTrace) -> bool:
    """λ((uv)w) = λ(u(vw)) on all basis triples"""
    n = ma.dimension
    for a in range(n):
        for b in range(n):
            for c in range(n):
                left = tr(ma.multiply(ma.table[(a, b)], _unit(n, c)))
                right = tr(ma.multiply(_unit(n, a), ma.table[(b, c)]))
                if left != right:
                    return False
    return True


def ideal_check(ma: MilnorAlgebra, tr: BulkTrace) -> bool:
    """λ kills every ∂_iW·b: the trace descends to the quotient"""
    n = ma.dimension
    for f in ma.jd.partials:
        f = f.set_ring(ma.ring)
        for b in range(n):
            coords = ma.reduce(f * ma.element(_unit(n, b)))
            if any(coords) or tr(coords) != 0:
                return False
    return True


def scaling_check(ma: MilnorAlgebra, backend: TraceBackend, scale: Fraction) -> bool:
    """Gram at scale c equals c² times the Gram at scale 1, with the same verdict"""
    base = bulk_gram(ma, bulk_trace(ma, backend, Fraction(1)))
    scaled = bulk_gram(ma, bulk_trace(ma, backend, scale))
    factor = Fraction(scale) ** 2
    return scaled.matrix == base.matrix.scale(factor) and scaled.nondegenerate == base.nondegenerate
