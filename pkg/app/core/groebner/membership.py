# app/core/groebner/membership.py
"""
Ideal membership with explicit cofactors.
"""
from typing import List, Optional, Sequence

from loguru import logger
from sympy.polys.rings import PolyElement

from app.core.exceptions import InvariantViolation, NotInIdeal
from app.core.groebner.buchberger import GroebnerBasis, buchberger
from app.core.groebner.rings import format_poly


def lift_membership(
    f: PolyElement,
    generators: Sequence[PolyElement],
    gb: Optional[GroebnerBasis] = None,
) -> List[PolyElement]:
    """
    Cofactors c with f = Σ c_i · generators[i].

    Args:
        f: polynomial in the ideal
        generators: ideal generators
        gb: basis previously computed from exactly these generators (optional)

    Raises:
        NotInIdeal: f has nonzero normal form
    """
    if gb is None:
        gb = buchberger(generators)
    R = gb.ring
    f = f.set_ring(R)
    if not gb.generators:
        if f:
            raise NotInIdeal(f"{format_poly(f)} is not in the zero ideal")
        return [R.zero for _ in generators]

    quotients, remainder = f.div(list(gb.generators))
    if remainder:
        raise NotInIdeal(f"{format_poly(f)} has nonzero normal form {format_poly(remainder)}")

    size = len(gb.inputs)
    cofactors = [R.zero] * size
    for q, row in zip(quotients, gb.transform):
        if q:
            for j in range(size):
                if row[j]:
                    cofactors[j] += q * row[j]

    rebuilt = R.zero
    for c, g in zip(cofactors, gb.inputs):
        rebuilt += c * g
    if rebuilt != f:
        raise InvariantViolation(f"cofactor reconstruction failed for {format_poly(f)}")
    logger.debug(f"lifted {format_poly(f)} through {size} generators")
    return cofactors
