# app/core/category/completion.py
"""
Supercompletion along an involution and the even subcategory.

    Gr: Hom^κ(a, b) := Hom(a, Σ^κ b),   g ∘ f := ε^(κν) Σ^κ(g) ∘ f
    Ev: keep the degree-0 morphisms, Σ restricts to an involution

ε is the twist of the involution, 1 for a strict one.

The two constructions are mutually inverse up to relabeling.
"""
from dataclasses import dataclass
from itertools import product
from typing import Dict, List

from loguru import logger

from app.core.category.tables import (
    InvolutiveCategoryTable,
    LinearCategoryTable,
    Pair,
    ShiftData,
    SuperCategoryTable,
    Vector,
    unit_vector,
)
from app.core.exceptions import PreconditionFailed
from app.core.exactalg import ZERO, MatrixQ


def _shift_power(sigma: ShiftData, b: str, kappa: int) -> str:
    return sigma.objects[b] if kappa % 2 else b


def _block_diagonal(top: MatrixQ, bottom: MatrixQ) -> MatrixQ:
    upper = top.hstack(MatrixQ.zeros(top.rows, bottom.cols))
    lower = MatrixQ.zeros(bottom.rows, top.cols).hstack(bottom)
    return upper.vstack(lower)


def supercompletion(c: InvolutiveCategoryTable) -> SuperCategoryTable:
    """
    Raises:
        NotInvolutive: Σ is missing or Σ∘Σ is not the identity
    """
    c.check_involution()
    sigma = c.involution
    parities = {}
    for a, b in product(c.objects, repeat=2):
        parities[(a, b)] = (0,) * c.dim(a, b) + (1,) * c.dim(a, sigma.objects[b])

    def split(a: str, b: str, k: int):
        even = c.dim(a, b)
        return (0, k) if k < even else (1, k - even)

    composition = {}
    for a, b, cc in product(c.objects, repeat=3):
        even_ac = c.dim(a, cc)
        size_ac = len(parities[(a, cc)])
        grid = []
        for j in range(len(parities[(b, cc)])):
            lam, jl = split(b, cc, j)
            target_g = _shift_power(sigma, cc, lam)
            row = []
            for i in range(len(parities[(a, b)])):
                kappa, il = split(a, b, i)
                g = c.basis_vector(b, target_g, jl)
                if kappa:
                    g = sigma.apply(b, target_g, g)
                middle = _shift_power(sigma, b, kappa)
                end = _shift_power(sigma, target_g, kappa)
                f = c.basis_vector(a, middle, il)
                value = c.compose(a, middle, end, g, f)
                if kappa and lam and sigma.twist != 1:
                    value = tuple(sigma.twist * v for v in value)
                vector = [ZERO] * size_ac
                offset = even_ac if (kappa + lam) % 2 else 0
                for k, v in enumerate(value):
                    vector[offset + k] = v
                row.append(tuple(vector))
            grid.append(row)
        composition[(a, b, cc)] = grid

    identities = {a: c.identities[a] + (ZERO,) * c.dim(a, sigma.objects[a]) for a in c.objects}
    shift = ShiftData(
        dict(sigma.objects),
        {
            (a, b): _block_diagonal(sigma.morphisms[(a, b)], sigma.morphisms[(a, sigma.objects[b])])
            for a, b in product(c.objects, repeat=2)
        },
        sigma.twist,
    )
    table = SuperCategoryTable(list(c.objects), parities, composition, identities, shift=shift)
    logger.debug(f"supercompletion on {len(c.objects)} objects")
    return table.validate()


def even_subcategory(t: SuperCategoryTable) -> InvolutiveCategoryTable:
    """
    Raises:
        PreconditionFailed: t carries no shift functor
    """
    if t.shift is None and t.objects:
        raise PreconditionFailed("the even subcategory needs a shift functor on the table")
    keep = {pair: t.even_indices(*pair) for pair in t.parities}
    composition = {}
    for a, b, c in product(t.objects, repeat=3):
        table = t.composition[(a, b, c)]
        composition[(a, b, c)] = [
            [tuple(table[j][i][k] for k in keep[(a, c)]) for i in keep[(a, b)]] for j in keep[(b, c)]
        ]
    identities = {a: tuple(t.identities[a][k] for k in keep[(a, a)]) for a in t.objects}
    involution = None
    if t.shift is not None:
        objects = t.shift.objects
        involution = ShiftData(
            dict(objects),
            {
                (a, b): t.shift.morphisms[(a, b)].submatrix(keep[(objects[a], objects[b])], keep[(a, b)])
                for a, b in product(t.objects, repeat=2)
            },
            t.shift.twist,
        )
    even = InvolutiveCategoryTable(
        list(t.objects),
        {pair: (0,) * len(indices) for pair, indices in keep.items()},
        composition,
        identities,
        involution=involution,
    )
    return even.validate() if t.objects else even


# ========================================
# Round trips
# ========================================

def graded_dims_agree(x: LinearCategoryTable, y: LinearCategoryTable) -> bool:
    if x.objects != y.objects:
        return False
    return all(x.graded_dim(a, b) == y.graded_dim(a, b) for a, b in product(x.objects, repeat=2))


def same_table(x: InvolutiveCategoryTable, y: InvolutiveCategoryTable) -> bool:
    """Equality of objects, structure constants, identities and involution"""
    if not graded_dims_agree(x, y):
        return False
    if x.composition != y.composition or x.identities != y.identities:
        return False
    if (x.involution is None) != (y.involution is None):
        return False
    return x.involution is None or (
        x.involution.objects == y.involution.objects
        and x.involution.morphisms == y.involution.morphisms
        and x.involution.twist == y.involution.twist
    )


@dataclass
class TransportVerdict:
    """Φ: Gr(Ev(t)) -> t, the identity on even classes and ρ on odd ones"""
    isomorphism: bool
    functorial: bool
    failures: List[str]

    @property
    def holds(self) -> bool:
        return self.isomorphism and self.functorial


def hdf_transport_check(t: SuperCategoryTable) -> TransportVerdict:
    """
    Compare the structure constants of Gr(Ev(t)) with those of t through ρ.

    Raises:
        PreconditionFailed: t carries no shift functor or no transport matrices
    """
    if t.shift is None or set(t.transport) != set(t.parities):
        raise PreconditionFailed("transport check needs shift and ρ data on every Hom space")
    gr = supercompletion(even_subcategory(t))
    phi: Dict[Pair, MatrixQ] = {}
    failures: List[str] = []
    for a, b in product(t.objects, repeat=2):
        keep = t.even_indices(a, b)
        even, odd = t.graded_dim(a, b)
        rho = t.transport[(a, b)]
        columns: List[Vector] = []
        for k in keep:
            columns.append(unit_vector(even + odd, k))
        for j in range(rho.cols):
            columns.append((ZERO,) * even + rho.column(j))
        phi[(a, b)] = MatrixQ.from_columns(columns, even + odd)
        if not (phi[(a, b)].is_square() and phi[(a, b)].rank() == even + odd):
            failures.append(f"Φ is not invertible on Hom({a}, {b})")
    if failures:
        logger.warning(f"⚠️ transport comparison: {failures[0]}")
        return TransportVerdict(False, False, failures)
    isomorphism = True
    functorial = True
    for a, b, c in product(t.objects, repeat=3):
        for j in range(gr.dim(b, c)):
            g = gr.basis_vector(b, c, j)
            for i in range(gr.dim(a, b)):
                f = gr.basis_vector(a, b, i)
                left = phi[(a, c)].apply(gr.compose(a, b, c, g, f))
                right = t.compose(a, b, c, phi[(b, c)].apply(g), phi[(a, b)].apply(f))
                if left != right:
                    functorial = False
                    failures.append(f"Φ does not preserve composition on {a}->{b}->{c}")
                    break
            if not functorial:
                break
    if failures:
        logger.warning(f"⚠️ transport comparison: {failures[0]}")
    return TransportVerdict(isomorphism, functorial, failures)
