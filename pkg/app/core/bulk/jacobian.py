# app/core/bulk/jacobian.py
"""
Landau-Ginzburg pairs on affine space and their Jacobian ideals.
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

from loguru import logger
from sympy.polys.rings import PolyElement, PolyRing

from app.core.exceptions import NotZeroDimensional
from app.core.groebner import (
    GroebnerBasis,
    MonomialOrder,
    buchberger,
    format_poly,
    is_constant,
    poly_det,
    pure_power_bounds,
    standard_monomials,
    total_degree,
    variable_names,
)


@dataclass(frozen=True)
class LGPair:
    """Polynomial potential W on affine d-space"""
    W: PolyElement

    def __post_init__(self):
        if is_constant(self.W):
            raise ValueError(f"potential must be non-constant, got {format_poly(self.W)}")

    @property
    def ring(self) -> PolyRing:
        return self.W.ring

    @property
    def d(self) -> int:
        return self.ring.ngens

    @property
    def signature(self) -> int:
        """μ = d mod 2"""
        return self.d % 2

    @property
    def degree(self) -> int:
        return total_degree(self.W)

    @property
    def variables(self) -> List[str]:
        return variable_names(self.ring)

    def partials(self) -> Tuple[PolyElement, ...]:
        return tuple(self.W.diff(x) for x in self.ring.gens)

    def hessian(self) -> PolyElement:
        """det(∂_i∂_j W)"""
        first = self.partials()
        matrix = [[f.diff(x) for x in self.ring.gens] for f in first]
        return poly_det(matrix, self.ring)

    def __str__(self) -> str:
        return format_poly(self.W)


@dataclass(frozen=True)
class JacobianData:
    pair: LGPair
    partials: Tuple[PolyElement, ...]
    groebner: GroebnerBasis
    zero_dimensional: bool


def jacobian_ideal(pair: LGPair, order: Optional[MonomialOrder] = None) -> JacobianData:
    """
    Partials of W and a Groebner basis of (∂_1 W, ..., ∂_d W).

    Args:
        pair: the potential
        order: monomial order; defaults to the ring's order
    """
    partials = pair.partials()
    gb = buchberger(list(partials), order)
    try:
        pure_power_bounds(gb)
        zero_dimensional = True
    except NotZeroDimensional:
        zero_dimensional = False
    logger.debug(f"Jacobian ideal of {pair}: basis {[format_poly(g) for g in gb.generators]}")
    return JacobianData(pair, partials, gb, zero_dimensional)


def critical_locus_finite(jd: JacobianData) -> Tuple[bool, Optional[int]]:
    """(finite, μ_W) with μ_W the number of standard monomials, None when infinite"""
    if not jd.zero_dimensional:
        return False, None
    return True, len(standard_monomials(jd.groebner))
