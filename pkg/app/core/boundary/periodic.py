# app/core/boundary/periodic.py
"""
Finite-dimensional shadows of the Hom complex for spectral sequence work.

Hom(a1, a2) ⊗ R/J is a 2-periodic complex of rational vector spaces. Laying
it out along p with a two-row acyclic vertical resolution gives a
horizontally 2-periodic double complex with d1-cohomology concentrated in
q = 0, the shape that arises once the form-degree direction collapses on
affine space.
"""
from dataclasses import dataclass
from typing import Dict, Tuple

from loguru import logger

from app.core.boundary.hom_complex import HomComplex2P
from app.core.bulk import MilnorAlgebra
from app.core.exceptions import InvariantViolation, PreconditionFailed
from app.core.exactalg import ZERO, MatrixQ
from app.core.groebner import format_poly, in_ideal, monomial
from app.core.homology import DoubleComplex, FiniteComplex, cohomology_dims, total_complex

Position = Tuple[int, int]


@dataclass(frozen=True)
class PeriodicComplex:
    """M^0 ⇄ M^1 with maps[κ] : M^κ -> M^(κ+1)"""
    dims: Tuple[int, int]
    maps: Dict[int, MatrixQ]

    def validate(self) -> "PeriodicComplex":
        for kappa in (0, 1):
            if not (self.maps[1 - kappa] @ self.maps[kappa]).is_zero():
                raise InvariantViolation(f"periodic differential squares to nonzero on M^{kappa}")
        return self

    def cohomology_dims(self) -> Tuple[int, int]:
        result = []
        for kappa in (0, 1):
            kernel = self.dims[kappa] - self.maps[kappa].rank()
            result.append(kernel - self.maps[1 - kappa].rank())
        return result[0], result[1]

    def unrolled(self, lo: int, hi: int) -> FiniteComplex:
        """The complex on degrees lo..hi with M^(k mod 2) in degree k"""
        dims = {k: self.dims[k % 2] for k in range(lo, hi + 1)}
        maps = {k: self.maps[k % 2] for k in range(lo, hi)}
        return FiniteComplex.from_dict(dims, maps)


def jacobian_reduced_complex(h: HomComplex2P, milnor: MilnorAlgebra) -> PeriodicComplex:
    """
    Hom(a1, a2) ⊗ R/J in the basis (position, standard monomial).

    Raises:
        PreconditionFailed: W is not in its Jacobian ideal
    """
    W = h.source.W.set_ring(milnor.ring)
    if not in_ideal(W, milnor.jd.groebner):
        raise PreconditionFailed(f"W = {format_poly(W)} is not in its Jacobian ideal")
    mu = milnor.dimension
    maps: Dict[int, MatrixQ] = {}
    for kappa in (0, 1):
        differential = h.differential(kappa)
        columns = []
        for p in range(h.rank(kappa)):
            for b in milnor.basis:
                column = [ZERO] * (h.rank(kappa + 1) * mu)
                for q in range(h.rank(kappa + 1)):
                    entry = differential[q, p]
                    if not entry:
                        continue
                    coords = milnor.reduce(entry.set_ring(milnor.ring) * monomial(milnor.ring, b))
                    for k, value in enumerate(coords):
                        column[q * mu + k] += value
                columns.append(column)
        maps[kappa] = MatrixQ.from_columns(columns, h.rank(kappa + 1) * mu)
    complex_ = PeriodicComplex((h.rank(0) * mu, h.rank(1) * mu), maps).validate()
    logger.debug(f"Jacobian-reduced Hom complex: dims {complex_.dims}, H {complex_.cohomology_dims()}")
    return complex_


# ========================================
# Periodic double complex
# ========================================

@dataclass(frozen=True)
class PeriodicDoubleComplex:
    complex: DoubleComplex
    window: Tuple[int, int]

    @property
    def interior(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def total_dims(self) -> Dict[int, int]:
        dims = cohomology_dims(total_complex(self.complex))
        return {n: dims.get(n, 0) for n in self.interior}


def _block_diagonal(m: MatrixQ) -> MatrixQ:
    top = m.hstack(MatrixQ.zeros(m.rows, m.cols))
    bottom = MatrixQ.zeros(m.rows, m.cols).hstack(m)
    return top.vstack(bottom)


def periodic_double_complex(M: PeriodicComplex, window: Tuple[int, int]) -> PeriodicDoubleComplex:
    """
    Nodes K^{p,0} = M^p ⊕ M^p and K^{p,1} = M^p (indices mod 2) for
    p in lo-2 .. hi+1, with d1 = [0, I] and d2 the periodic differential.
    Only total degrees inside the window see the whole complex.
    """
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty window {window}")
    nodes: Dict[Position, int] = {}
    d1: Dict[Position, MatrixQ] = {}
    d2: Dict[Position, MatrixQ] = {}
    first, last = lo - 2, hi + 1
    for p in range(first, last + 1):
        m = M.dims[p % 2]
        nodes[(p, 0)] = 2 * m
        nodes[(p, 1)] = m
        d1[(p, 0)] = MatrixQ.zeros(m, m).hstack(MatrixQ.identity(m))
        if p < last:
            d2[(p, 0)] = _block_diagonal(M.maps[p % 2])
            d2[(p, 1)] = M.maps[p % 2]
    K = DoubleComplex(nodes, d1, d2).validate()
    return PeriodicDoubleComplex(K, window)
