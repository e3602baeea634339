# app/core/groebner/rings.py
"""
Ring contexts for multivariate polynomials over Q.

Polynomials are sympy PolyElements; this module converts between them
and the Fraction-based world of the exact linear algebra layer.
"""
from enum import Enum
from fractions import Fraction
from itertools import permutations, product
from typing import Dict, Iterator, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.orderings import grevlex, grlex, lex
from sympy.polys.rings import PolyElement, PolyRing

Monomial = Tuple[int, ...]


class MonomialOrder(str, Enum):
    DEGREVLEX = "degrevlex"
    LEX = "lex"
    GRLEX = "grlex"

    @property
    def sympy_order(self):
        return {
            MonomialOrder.DEGREVLEX: grevlex,
            MonomialOrder.LEX: lex,
            MonomialOrder.GRLEX: grlex,
        }[self]


def make_ring(variables: Sequence[str], order: MonomialOrder = MonomialOrder.DEGREVLEX) -> PolyRing:
    """Polynomial ring Q[variables] under the given order (rings are cached by sympy)"""
    if not variables:
        raise ValueError("a ring needs at least one variable")
    return PolyRing(list(variables), QQ, MonomialOrder(order).sympy_order)


def ring_order(ring: PolyRing) -> MonomialOrder:
    for order in MonomialOrder:
        if ring.order == order.sympy_order:
            return order
    raise ValueError(f"unsupported monomial order {ring.order}")


def with_order(f: PolyElement, order: MonomialOrder) -> PolyElement:
    """The same polynomial in the ring with the same variables and another order"""
    target = make_ring(variable_names(f.ring), order)
    return f.set_ring(target)


def variable_names(ring: PolyRing) -> List[str]:
    return [str(s) for s in ring.symbols]


# ========================================
# Coefficient conversions
# ========================================

def to_fraction(coefficient) -> Fraction:
    return Fraction(int(coefficient.numerator), int(coefficient.denominator))


def to_domain(value) -> object:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_terms(ring: PolyRing, terms: Dict[Monomial, Fraction]) -> PolyElement:
    return ring.from_dict({m: to_domain(c) for m, c in terms.items() if c})


def to_terms(f: PolyElement) -> Dict[Monomial, Fraction]:
    return {m: to_fraction(c) for m, c in f.items()}


def constant(ring: PolyRing, value) -> PolyElement:
    return from_terms(ring, {(0,) * ring.ngens: Fraction(value)})


def monomial(ring: PolyRing, exponents: Monomial, coefficient=1) -> PolyElement:
    return from_terms(ring, {tuple(exponents): Fraction(coefficient)})


def coefficient(f: PolyElement, exponents: Monomial) -> Fraction:
    value = f.get(tuple(exponents))
    return to_fraction(value) if value is not None else Fraction(0)


def scale(f: PolyElement, value) -> PolyElement:
    return f * to_domain(value)


# ========================================
# Degrees and monomial enumeration
# ========================================

def total_degree(f: PolyElement) -> int:
    """-1 for the zero polynomial"""
    return max((sum(m) for m in f.keys()), default=-1)


def is_constant(f: PolyElement) -> bool:
    return total_degree(f) <= 0


def monomials_of_degree(nvars: int, degree: int) -> Iterator[Monomial]:
    """Exponent vectors of the given total degree, lexicographically decreasing"""
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            yield (first,) + rest


def monomials_up_to(nvars: int, degree: int) -> List[Monomial]:
    """All monomials of total degree <= degree, graded by degree first"""
    result: List[Monomial] = []
    for k in range(degree + 1):
        result.extend(monomials_of_degree(nvars, k))
    return result


def monomials_in_box(bounds: Sequence[int]) -> Iterator[Monomial]:
    """Monomials with exponent i strictly below bounds[i]"""
    return product(*(range(b) for b in bounds))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


# ========================================
# Text
# ========================================

def format_poly(f: PolyElement) -> str:
    """Problem-file syntax: '^' for powers, '*' between factors"""
    return str(f).replace("**", "^")


def format_monomial(exponents: Monomial, names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


# ========================================
# Polynomial matrices
# ========================================

def permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def poly_det(matrix: Sequence[Sequence[PolyElement]], ring: PolyRing) -> PolyElement:
    """Leibniz expansion; matrices here are at most a few rows"""
    n = len(matrix)
    total = ring.zero
    for perm in permutations(range(n)):
        term = ring.one
        for i, j in enumerate(perm):
            term = term * matrix[i][j]
            if not term:
                break
        if term:
            total += term if permutation_sign(perm) > 0 else -term
    return total
