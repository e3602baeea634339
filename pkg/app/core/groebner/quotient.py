# app/core/groebner/quotient.py
"""
Normal forms and standard monomials of zero-dimensional quotients.
"""
from typing import List

from sympy.polys.rings import PolyElement

from app.core.exceptions import NotZeroDimensional
from app.core.groebner.buchberger import GroebnerBasis
from app.core.groebner.rings import Monomial, monomial_divides, monomials_in_box


def normal_form(f: PolyElement, gb: GroebnerBasis) -> PolyElement:
    """Unique remainder of f modulo the basis (no term divisible by a leading monomial)"""
    if f.ring != gb.ring:
        f = f.set_ring(gb.ring)
    if not gb.generators:
        return f
    return f.rem(list(gb.generators))


def in_ideal(f: PolyElement, gb: GroebnerBasis) -> bool:
    return not normal_form(f, gb)


def pure_power_bounds(gb: GroebnerBasis) -> List[int]:
    """
    For each variable, the smallest exponent e with x_i^e a leading monomial.

    Raises:
        NotZeroDimensional: some variable has no pure power among the leading terms
    """
    n = gb.ring.ngens
    bounds: List[int] = []
    missing = []
    for i in range(n):
        powers = [lm[i] for lm in gb.leading_monomials
                  if all(e == 0 for k, e in enumerate(lm) if k != i)]
        if not powers:
            missing.append(str(gb.ring.symbols[i]))
            bounds.append(0)
        else:
            bounds.append(min(powers))
    if missing:
        raise NotZeroDimensional(f"no pure power of {', '.join(missing)} among the leading monomials")
    return bounds


def standard_monomials(gb: GroebnerBasis) -> List[Monomial]:
    """Monomials outside the leading-term ideal, in increasing monomial order"""
    bounds = pure_power_bounds(gb)
    leading = gb.leading_monomials
    found = [m for m in monomials_in_box(bounds)
             if not any(monomial_divides(lm, m) for lm in leading)]
    return sorted(found, key=gb.ring.order)
