# app/core/bulk/milnor.py
"""
Milnor algebra Q[x]/(∂W) with its standard-monomial basis and
multiplication table.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from loguru import logger
from sympy.polys.rings import PolyElement

from app.core.bulk.jacobian import JacobianData
from app.core.exceptions import InvariantViolation, NotZeroDimensional
from app.core.exactalg import ONE, ZERO, EchelonBasis, MatrixQ, nullspace, to_sparse
from app.core.groebner import (
    Monomial,
    coefficient,
    constant,
    format_monomial,
    from_terms,
    monomial,
    normal_form,
    standard_monomials,
)

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class MilnorAlgebra:
    jd: JacobianData
    basis: Tuple[Monomial, ...]
    table: Dict[Tuple[int, int], Vector]

    @property
    def dimension(self) -> int:
        """Milnor number μ_W"""
        return len(self.basis)

    @property
    def ring(self):
        return self.jd.groebner.ring

    def labels(self) -> List[str]:
        return [format_monomial(m, self.jd.pair.variables) for m in self.basis]

    def reduce(self, f: PolyElement) -> Vector:
        """Coordinates of the class of f"""
        remainder = normal_form(f, self.jd.groebner)
        return tuple(coefficient(remainder, m) for m in self.basis)

    def element(self, coords: Sequence) -> PolyElement:
        return from_terms(self.ring, {m: Fraction(c) for m, c in zip(self.basis, coords)})

    def unit(self) -> Vector:
        return self.reduce(self.ring.one)

    def multiply(self, u: Sequence, v: Sequence) -> Vector:
        result = [ZERO] * self.dimension
        for a, ca in enumerate(u):
            if not ca:
                continue
            for b, cb in enumerate(v):
                if cb:
                    for k, value in enumerate(self.table[(a, b)]):
                        if value:
                            result[k] += ca * cb * value
        return tuple(result)

    def multiplication_matrix(self, f: PolyElement) -> MatrixQ:
        """Matrix of u -> f·u in the standard basis"""
        coords = self.reduce(f)
        columns = [self.multiply(coords, self._unit_vector(b)) for b in range(self.dimension)]
        return MatrixQ.from_columns(columns, self.dimension)

    def _unit_vector(self, index: int) -> Vector:
        return tuple(ONE if k == index else ZERO for k in range(self.dimension))

    def verify(self) -> "MilnorAlgebra":
        """Unit, commutativity and associativity on all basis triples"""
        unit = self.unit()
        n = self.dimension
        for a in range(n):
            e_a = self._unit_vector(a)
            if self.multiply(unit, e_a) != e_a:
                raise InvariantViolation(f"1 is not a unit on {self.labels()[a]}")
            for b in range(n):
                if self.table[(a, b)] != self.table[(b, a)]:
                    raise InvariantViolation("Milnor algebra table is not commutative")
                ab = self.table[(a, b)]
                for c in range(n):
                    e_c = self._unit_vector(c)
                    if self.multiply(ab, e_c) != self.multiply(e_a, self.table[(b, c)]):
                        raise InvariantViolation("Milnor algebra table is not associative")
        return self


def milnor_algebra(jd: JacobianData) -> MilnorAlgebra:
    """
    Raises:
        NotZeroDimensional: the critical locus is not finite
    """
    if not jd.zero_dimensional:
        raise NotZeroDimensional(f"critical locus of {jd.pair} is not finite")
    basis = tuple(standard_monomials(jd.groebner))
    ring = jd.groebner.ring
    table: Dict[Tuple[int, int], Vector] = {}
    for a, ma in enumerate(basis):
        for b in range(a, len(basis)):
            mb = basis[b]
            product = monomial(ring, tuple(x + y for x, y in zip(ma, mb)))
            remainder = normal_form(product, jd.groebner)
            coords = tuple(coefficient(remainder, m) for m in basis)
            table[(a, b)] = coords
            table[(b, a)] = coords
    algebra = MilnorAlgebra(jd, basis, table)
    logger.debug(f"Milnor algebra of {jd.pair}: μ = {algebra.dimension}")
    return algebra.verify()


# ========================================
# Structure: socle, locality, eliminants
# ========================================

def socle(ma: MilnorAlgebra) -> List[Vector]:
    """Basis of the annihilator of all variables"""
    stacked = None
    for x in ma.ring.gens:
        m = ma.multiplication_matrix(x)
        stacked = m if stacked is None else stacked.vstack(m)
    return nullspace(stacked)


def is_local(ma: MilnorAlgebra) -> bool:
    """True when every variable acts nilpotently, i.e. the only critical point is the origin"""
    n = ma.dimension
    for x in ma.ring.gens:
        m = ma.multiplication_matrix(x)
        power = MatrixQ.identity(n)
        for _ in range(n):
            power = power @ m
        if not power.is_zero():
            return False
    return True


def hessian_class(ma: MilnorAlgebra) -> Vector:
    return ma.reduce(ma.jd.pair.hessian())


def eliminant(ma: MilnorAlgebra, index: int) -> PolyElement:
    """Monic minimal polynomial g(x_index) of x_index acting on the Milnor algebra; g lies in J"""
    ring = ma.ring
    x = ring.gens[index]
    echelon = EchelonBasis(ma.dimension)
    power = ring.one
    degree = 0
    while True:
        coords = to_sparse(ma.reduce(power))
        remainder, combination = echelon.reduce(coords)
        if not remainder:
            g = power
            for k, c in combination.items():
                g -= x ** k * constant(ring, c)
            return g
        echelon.add(coords)
        power = power * x
        degree += 1
        if degree > ma.dimension:
            raise InvariantViolation(f"no relation among powers of {ring.symbols[index]}")
