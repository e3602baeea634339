# app/core/category/tables.py
"""
Finite linear categories as tables of structure constants.

Every Hom space carries a flat basis; in graded tables the even basis
vectors come first. composition[(a, b, c)][j][i] holds the coordinates in
Hom(a, c) of g_j ∘ f_i for f_i in Hom(a, b) and g_j in Hom(b, c).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from app.core.exceptions import InvariantViolation, NotInvolutive
from app.core.exactalg import ZERO, ONE, MatrixQ

Pair = Tuple[str, str]
Triple = Tuple[str, str, str]
Vector = Tuple[Fraction, ...]
Composition = List[List[Vector]]


def unit_vector(n: int, k: int) -> Vector:
    return tuple(ONE if i == k else ZERO for i in range(n))


@dataclass
class LinearCategoryTable:
    objects: List[str]
    parities: Dict[Pair, Tuple[int, ...]]
    composition: Dict[Triple, Composition]
    identities: Dict[str, Vector]

    def dim(self, a: str, b: str) -> int:
        return len(self.parities.get((a, b), ()))

    def graded_dim(self, a: str, b: str) -> Tuple[int, int]:
        parities = self.parities.get((a, b), ())
        return parities.count(0), parities.count(1)

    def compose(self, a: str, b: str, c: str, g: Sequence, f: Sequence) -> Vector:
        """g ∘ f for coordinate vectors f in Hom(a, b) and g in Hom(b, c)"""
        table = self.composition[(a, b, c)]
        result = [ZERO] * self.dim(a, c)
        for j, gj in enumerate(g):
            if not gj:
                continue
            for i, fi in enumerate(f):
                if fi:
                    for k, value in enumerate(table[j][i]):
                        if value:
                            result[k] += gj * fi * value
        return tuple(result)

    def basis_vector(self, a: str, b: str, k: int) -> Vector:
        return unit_vector(self.dim(a, b), k)

    # ========================================
    # Axioms
    # ========================================

    def check_associativity(self) -> None:
        for a, b, c, d in product(self.objects, repeat=4):
            for i in range(self.dim(a, b)):
                f = self.basis_vector(a, b, i)
                for j in range(self.dim(b, c)):
                    g = self.basis_vector(b, c, j)
                    gf = self.compose(a, b, c, g, f)
                    for k in range(self.dim(c, d)):
                        h = self.basis_vector(c, d, k)
                        left = self.compose(a, c, d, h, gf)
                        right = self.compose(a, b, d, self.compose(b, c, d, h, g), f)
                        if left != right:
                            raise InvariantViolation(f"composition is not associative on {a}->{b}->{c}->{d}")

    def check_units(self) -> None:
        for a, b in product(self.objects, repeat=2):
            for i in range(self.dim(a, b)):
                f = self.basis_vector(a, b, i)
                if self.compose(a, a, b, f, self.identities[a]) != f:
                    raise InvariantViolation(f"identity of {a} is not a right unit")
                if self.compose(a, b, b, self.identities[b], f) != f:
                    raise InvariantViolation(f"identity of {b} is not a left unit")

    def check_parity(self) -> None:
        for a, b, c in product(self.objects, repeat=3):
            for j, pg in enumerate(self.parities.get((b, c), ())):
                for i, pf in enumerate(self.parities.get((a, b), ())):
                    for k, value in enumerate(self.composition[(a, b, c)][j][i]):
                        if value and self.parities[(a, c)][k] != (pf + pg) % 2:
                            raise InvariantViolation(f"composition {a}->{b}->{c} breaks parity additivity")

    def validate(self) -> "LinearCategoryTable":
        self.check_units()
        self.check_associativity()
        self.check_parity()
        logger.debug(f"category table on {len(self.objects)} objects verified")
        return self


# ========================================
# Graded tables with shift data
# ========================================

@dataclass
class ShiftData:
    """
    Σ on objects and its coordinate matrices Hom(a, b) -> Hom(Σa, Σb).

    twist is the sign ε with θ_Σa ∘ θ_a = ε·id_a for the odd isomorphisms
    θ_a: a -> Σa; supercompletion multiplies odd ∘ odd products by it.
    Over Q it cannot be normalized away when it is -1.
    """
    objects: Dict[str, str]
    morphisms: Dict[Pair, MatrixQ]
    twist: int = 1

    def apply(self, a: str, b: str, f: Sequence) -> Vector:
        return self.morphisms[(a, b)].apply(f)


@dataclass
class SuperCategoryTable(LinearCategoryTable):
    shift: Optional[ShiftData] = None
    traces: Dict[str, Vector] = field(default_factory=dict)
    serre_traces: Dict[str, Vector] = field(default_factory=dict)
    transport: Dict[Pair, MatrixQ] = field(default_factory=dict)
    signature: Optional[int] = None

    def even_indices(self, a: str, b: str) -> List[int]:
        return [k for k, p in enumerate(self.parities.get((a, b), ())) if p == 0]


@dataclass
class InvolutiveCategoryTable(LinearCategoryTable):
    """Ungraded table with an involution Σ; every parity is 0"""
    involution: Optional[ShiftData] = None

    def check_involution(self) -> None:
        sigma = self.involution
        if sigma is None:
            raise NotInvolutive("no involution supplied")
        if sigma.twist not in (1, -1):
            raise NotInvolutive(f"twist must be 1 or -1, got {sigma.twist}")
        for a in self.objects:
            if sigma.objects.get(sigma.objects.get(a)) != a:
                raise NotInvolutive(f"Σ∘Σ moves object {a}")
        for a, b in product(self.objects, repeat=2):
            sa, sb = sigma.objects[a], sigma.objects[b]
            twice = sigma.morphisms[(sa, sb)] @ sigma.morphisms[(a, b)]
            if twice != MatrixQ.identity(self.dim(a, b)):
                raise NotInvolutive(f"Σ∘Σ is not the identity on Hom({a}, {b})")

    def check_functor(self) -> None:
        sigma = self.involution
        for a in self.objects:
            if sigma.apply(a, a, self.identities[a]) != self.identities[sigma.objects[a]]:
                raise InvariantViolation(f"Σ does not preserve the identity of {a}")
        for a, b, c in product(self.objects, repeat=3):
            sa, sb, sc = (sigma.objects[x] for x in (a, b, c))
            for i in range(self.dim(a, b)):
                f = self.basis_vector(a, b, i)
                for j in range(self.dim(b, c)):
                    g = self.basis_vector(b, c, j)
                    left = sigma.apply(a, c, self.compose(a, b, c, g, f))
                    right = self.compose(sa, sb, sc, sigma.apply(b, c, g), sigma.apply(a, b, f))
                    if left != right:
                        raise InvariantViolation(f"Σ is not functorial on {a}->{b}->{c}")

    def validate(self) -> "InvolutiveCategoryTable":
        super().validate()
        self.check_involution()
        self.check_functor()
        return self
