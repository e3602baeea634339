# app/core/gradedpair/pairing.py
"""
Graded duality morphism, graded Serre pairing and the reduced-contraction
identity, on one fiber.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Tuple

from loguru import logger

from app.core.exactalg import ONE, ZERO, MatrixQ, as_fraction
from app.core.gradedpair.exterior import ExteriorElement, contract, full_basis


class Grading(str, Enum):
    Z = "Z"
    Z2 = "Z2"


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


@dataclass(frozen=True)
class GradedVS:
    """Finite-dimensional graded vector space given by component dimensions"""
    grading: Grading
    dims: Dict[int, int]

    def __post_init__(self):
        dims: Dict[int, int] = {}
        for k, n in self.dims.items():
            if n:
                key = self.normalize(k)
                dims[key] = dims.get(key, 0) + n
        object.__setattr__(self, "dims", dims)

    def normalize(self, degree: int) -> int:
        return degree % 2 if self.grading == Grading.Z2 else degree

    def dim(self, degree: int) -> int:
        return self.dims.get(self.normalize(degree), 0)

    def dual(self) -> "GradedVS":
        """(Q^∨)^j = (Q^{-j})^*"""
        return GradedVS(self.grading, {self.normalize(-k): n for k, n in self.dims.items()})

    def degrees_sum_to_zero(self, i: int, j: int) -> bool:
        return self.normalize(i + j) == 0

    def basis(self) -> List[Tuple[int, int]]:
        """(degree, index) pairs, degrees increasing"""
        return [(k, a) for k in sorted(self.dims) for a in range(self.dims[k])]


@dataclass(frozen=True)
class HomogeneousElement:
    degree: int
    vector: Tuple[Fraction, ...]


def ev_q(space: GradedVS, v: HomogeneousElement, w: HomogeneousElement) -> Fraction:
    """
    ev_Q(v, w) = (-1)^i δ_{i+j,0} w(v) for v in Q^i and w in (Q^∨)^j.
    """
    if not space.degrees_sum_to_zero(v.degree, w.degree):
        return ZERO
    if len(v.vector) != len(w.vector):
        raise ValueError("covector does not match the component dimension")
    value = sum((as_fraction(a) * as_fraction(b) for a, b in zip(v.vector, w.vector)), ZERO)
    return value * _sign(v.degree)


def ev_matrix(space: GradedVS) -> MatrixQ:
    """Matrix of ev_Q between the basis of Q and the dual basis of Q^∨"""
    dual = space.dual()
    rows = space.basis()
    cols = dual.basis()
    grid = []
    for i, a in rows:
        row = []
        for j, b in cols:
            if space.degrees_sum_to_zero(i, j) and a == b:
                row.append(Fraction(_sign(i)))
            else:
                row.append(ZERO)
        grid.append(row)
    return MatrixQ.from_rows(grid, cols=len(cols))


def is_signed_permutation(matrix: MatrixQ) -> bool:
    if not matrix.is_square():
        return False
    for k in range(matrix.rows):
        row = [v for v in matrix.row(k) if v]
        col = [v for v in matrix.column(k) if v]
        if len(row) != 1 or len(col) != 1 or abs(row[0]) != 1:
            return False
    return True


# ========================================
# Serre pairing on tri-graded elements
# ========================================

@dataclass(frozen=True)
class TriGradedElement:
    """
    Decomposable ω ⊗ v with ω in Λ^p V* ⊗ Λ^q V̄* and v in Q^i.

    ω lives in Λ(Q^{2d}); indices 0..d-1 are holomorphic, d..2d-1 antiholomorphic.
    """
    d: int
    form: ExteriorElement
    value: HomogeneousElement

    def __post_init__(self):
        if self.form.n != 2 * self.d:
            raise ValueError("form must live on 2d generators")
        if self.form.is_zero():
            return
        bidegrees = {self._bidegree(s) for s in self.form.terms}
        if len(bidegrees) != 1:
            raise ValueError("form is not of pure bidegree")

    def _bidegree(self, subset) -> Tuple[int, int]:
        p = sum(1 for k in subset if k < self.d)
        return p, len(subset) - p

    @property
    def p(self) -> int:
        return self._bidegree(next(iter(self.form.terms)))[0] if self.form.terms else 0

    @property
    def q(self) -> int:
        return self._bidegree(next(iter(self.form.terms)))[1] if self.form.terms else 0

    @property
    def i(self) -> int:
        return self.value.degree


def koszul_sign(i: int, p2: int, q2: int) -> int:
    """Sign of moving a degree-i value past a (p2, q2)-form"""
    return _sign(i * (p2 + q2))


def serre_sign(i: int, p2: int, q2: int) -> int:
    """(-1)^{i(p2+q2+1)}: Koszul sign times the sign of ev_Q"""
    return koszul_sign(i, p2, q2) * _sign(i)


@dataclass(frozen=True)
class FormComponent:
    """Output of the Serre pairing: a scalar form of tridegree (p, q, 0)"""
    p: int
    q: int
    form: ExteriorElement


def serre_pair(space: GradedVS, first: TriGradedElement, second: TriGradedElement) -> FormComponent:
    """
    S_Q(ω1⊗v, ω2⊗w) = (-1)^{i(p2+q2+1)} δ_{i+j,0} w(v) · ω1∧ω2.
    """
    if first.d != second.d:
        raise ValueError("elements live over different dimensions")
    p, q = first.p + second.p, first.q + second.q
    if not space.degrees_sum_to_zero(first.i, second.i):
        return FormComponent(p, q, ExteriorElement(2 * first.d, {}))
    # ev_Q carries (-1)^i, the Koszul swap of v past ω2 the rest
    value = ev_q(space, first.value, second.value) * koszul_sign(first.i, second.p, second.q)
    return FormComponent(p, q, first.form.wedge(second.form).scale(value))


# ========================================
# Reduced contraction
# ========================================

def reduced_contraction(omega: ExteriorElement, polyvector: ExteriorElement) -> Fraction:
    """Ω ⌟₀ v: the degree-0 component of the full contraction"""
    return contract(polyvector, omega).scalar_part()


def ev_polyvector(polyvector: ExteriorElement, form: ExteriorElement) -> Fraction:
    """ev_{∧TX}(v, α) with ∧^k TX placed in degree -k"""
    k = polyvector.degree()
    if k is None:
        if polyvector.is_zero():
            return ZERO
        raise ValueError("polyvector must be homogeneous")
    return _sign(k) * contract(polyvector, form).scalar_part()


@dataclass(frozen=True)
class ContractionCheck:
    d: int
    k1: int
    k2: int
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def reduced_contraction_identity_check(
    d: int,
    omega: ExteriorElement,
    v1: ExteriorElement,
    v2: ExteriorElement,
) -> ContractionCheck:
    """
    Ω⌟₀(v1∧v2) = (-1)^{k1 d} ev_{∧TX}(v1, Ω⌟v2) for homogeneous v1, v2.
    """
    k1 = v1.degree() if not v1.is_zero() else 0
    k2 = v2.degree() if not v2.is_zero() else 0
    if k1 is None or k2 is None:
        raise ValueError("v1 and v2 must be homogeneous")
    lhs = reduced_contraction(omega, v1.wedge(v2))
    inner = contract(v2, omega)
    rhs = _sign(k1 * d) * ev_polyvector(v1, inner)
    check = ContractionCheck(d, k1, k2, lhs, rhs)
    if not check.holds:
        logger.warning(f"⚠️ reduced contraction identity fails for d={d}, k1={k1}, k2={k2}: {lhs} vs {rhs}")
    return check


def contraction_identity_battery(d: int, omega_scale=ONE) -> List[ContractionCheck]:
    """The identity on every pair of basis polyvectors of Λ(Q^d)"""
    omega = ExteriorElement.monomial(d, range(d), omega_scale)
    checks = []
    for a in full_basis(d):
        for b in full_basis(d):
            checks.append(reduced_contraction_identity_check(
                d, omega, ExteriorElement.monomial(d, a), ExteriorElement.monomial(d, b)
            ))
    return checks
