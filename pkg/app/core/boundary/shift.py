# app/core/boundary/shift.py
"""
The shift Σ on morphisms and the natural isomorphism
ρ: Hom(a, Σb) -> ΠHom(a, b).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from loguru import logger

from app.core.boundary.cohomology import HomBackend, hdf_cohomology
from app.core.boundary.factorization import MatrixFactorization, shift_mf, shift_order
from app.core.boundary.hom_complex import Morphism, compose, hom_complex, identity_morphism
from app.core.boundary.polymatrix import PolyMatrix
from app.core.boundary.trace import BoundaryTrace
from app.core.bulk import BulkTrace
from app.core.exactalg import MatrixQ
from app.core.exceptions import InvariantViolation


def _inverse(order: List[int]) -> List[int]:
    inverse = [0] * len(order)
    for position, index in enumerate(order):
        inverse[index] = position
    return inverse


def shift_morphism(t: Morphism) -> Morphism:
    """Σ(t) = (-1)^κ · blockswap(t), a morphism Σa -> Σb"""
    swapped = t.matrix.permute(shift_order(t.target), shift_order(t.source))
    return Morphism(shift_mf(t.source), shift_mf(t.target), t.parity, swapped.scale(-1 if t.parity else 1))


def shift_transport(a: MatrixFactorization, b: MatrixFactorization, u: Morphism) -> Morphism:
    """
    ρ(u) = P_b⁻¹ · u · J_a for u in Hom^κ(a, Σb); the result lies in Hom^(κ+1)(a, b).
    """
    if u.source != a or u.target != shift_mf(b):
        raise ValueError("transport expects a morphism a -> Σb")
    back = u.matrix.permute(_inverse(shift_order(b)), range(a.size))
    return Morphism(a, b, (u.parity + 1) % 2, back @ a.grading)


def shift_twist(a: MatrixFactorization) -> int:
    """
    The sign ε with θ_Σa ∘ θ_a = ε·id_a, where θ_a = ρ(id_a) is the odd
    isomorphism a -> Σa.

    Raises:
        InvariantViolation: the composite is not a multiple of the identity
    """
    shifted = shift_mf(a)
    theta = shift_transport(a, shifted, identity_morphism(a))
    theta_back = shift_transport(shifted, a, identity_morphism(shifted))
    twice = compose(theta_back, theta).matrix
    one = PolyMatrix.identity(a.ring, a.size)
    for sign in (1, -1):
        if twice == one.scale(sign):
            return sign
    raise InvariantViolation(f"θ_Σa ∘ θ_a is not ±id on {a.label()}")


@dataclass(frozen=True)
class ShiftCheck:
    parity: int
    index: int
    shifted: Fraction
    original: Fraction
    sign: int

    @property
    def holds(self) -> bool:
        return self.shifted == self.sign * self.original


def shift_compatibility(
    a: MatrixFactorization,
    bulk: BulkTrace,
    backend: Optional[HomBackend] = None,
    truncation: Optional[int] = None,
) -> List[ShiftCheck]:
    """
    tr_Σa(Σt) against tr_a(t) on the cohomology basis of End(a).

    The expected sign is (-1)^(d+1): the supertrace changes sign under
    parity change and Σ carries (-1)^κ.
    """
    d = a.ring.ngens
    sign = 1 if d % 2 else -1
    cohomology = hdf_cohomology(hom_complex(a, a), backend, truncation)
    tr = BoundaryTrace(a, bulk)
    tr_shifted = BoundaryTrace(shift_mf(a), bulk)
    checks = []
    for kappa in (0, 1):
        for index, t in enumerate(cohomology.representatives(kappa)):
            checks.append(ShiftCheck(kappa, index, tr_shifted(shift_morphism(t)), tr(t), sign))
    failed = [c for c in checks if not c.holds]
    if failed:
        logger.warning(f"⚠️ shift compatibility fails on {len(failed)} cocycles of {a.label()}")
    return checks


@dataclass(frozen=True)
class TransportCheck:
    """Matrices of ρ on cohomology, keyed by the source parity"""
    matrices: Dict[int, MatrixQ]

    @property
    def isomorphism(self) -> bool:
        return all(m.is_square() and m.rank() == m.rows for m in self.matrices.values())


def transport_check(
    a: MatrixFactorization,
    b: MatrixFactorization,
    backend: Optional[HomBackend] = None,
    truncation: Optional[int] = None,
) -> TransportCheck:
    """ρ induces H^κ(Hom(a, Σb)) ≅ H^(κ+1)(Hom(a, b))"""
    source = hdf_cohomology(hom_complex(a, shift_mf(b)), backend, truncation)
    target = hdf_cohomology(hom_complex(a, b), backend, truncation)
    matrices: Dict[int, MatrixQ] = {}
    for kappa in (0, 1):
        columns = [target.reduce(shift_transport(a, b, u)) for u in source.representatives(kappa)]
        rows = target.dims[(kappa + 1) % 2]
        matrices[kappa] = MatrixQ.from_columns(columns, rows)
    return TransportCheck(matrices)


def shifted_dims(
    a1: MatrixFactorization,
    a2: MatrixFactorization,
    backend: Optional[HomBackend] = None,
    truncation: Optional[int] = None,
) -> Dict[str, Tuple[int, int]]:
    """Graded dimensions of Hom(a1, Σa2), Hom(Σa1, a2) and ΠHom(a1, a2)"""
    plain = hdf_cohomology(hom_complex(a1, a2), backend, truncation).dims
    return {
        "hom(a,Σb)": hdf_cohomology(hom_complex(a1, shift_mf(a2)), backend, truncation).dims,
        "hom(Σa,b)": hdf_cohomology(hom_complex(shift_mf(a1), a2), backend, truncation).dims,
        "Πhom(a,b)": (plain[1], plain[0]),
    }
