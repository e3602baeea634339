# app/core/groebner/buchberger.py
"""
Buchberger's algorithm with Gebauer-Moeller pair elimination.

Each basis element carries a row of cofactors expressing it in terms of
the input generators, so ideal membership can be lifted afterwards.
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

from loguru import logger
from sympy.polys.rings import PolyElement, PolyRing

from app.core.groebner.rings import MonomialOrder, ring_order, with_order

Pair = Tuple[int, int]
Cofactors = Tuple[PolyElement, ...]


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced monic Groebner basis, sorted by increasing leading monomial"""
    generators: Tuple[PolyElement, ...]
    order: MonomialOrder
    ring: PolyRing
    inputs: Tuple[PolyElement, ...] = ()
    # transform[k][j]: coefficient of inputs[j] in generators[k]
    transform: Tuple[Cofactors, ...] = ()

    @property
    def leading_monomials(self) -> List[Tuple[int, ...]]:
        return [g.LM for g in self.generators]

    def __len__(self) -> int:
        return len(self.generators)

    def is_unit_ideal(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials)


# ========================================
# Basic steps
# ========================================

def spoly(f: PolyElement, g: PolyElement) -> Tuple[PolyElement, Tuple[int, ...], Tuple[int, ...]]:
    """S-polynomial of monic f and g, with the two monomial multipliers"""
    R = f.ring
    lcm = R.monomial_lcm(f.LM, g.LM)
    mf = R.monomial_div(lcm, f.LM)
    mg = R.monomial_div(lcm, g.LM)
    return f.mul_monom(mf) - g.mul_monom(mg), mf, mg


def select(G: Sequence[PolyElement], P: Set[Pair]) -> Pair:
    """Normal strategy: smallest lcm of leading monomials, ties by index"""
    R = G[0].ring

    def key(p: Pair):
        lcm = R.monomial_lcm(G[p[0]].LM, G[p[1]].LM)
        return R.order(lcm), p[1], p[0]

    return min(P, key=key)


def update(G: List[PolyElement], P: Set[Pair], f: PolyElement) -> Tuple[List[PolyElement], Set[Pair]]:
    """Add f to G and refresh the pair set with the Gebauer-Moeller criteria"""
    R = f.ring
    lmf = f.LM
    lmG = [g.LM for g in G]
    lcm = R.monomial_lcm
    mul = R.monomial_mul
    div = R.monomial_div

    P = {p for p in P if (not div(lcm(lmG[p[0]], lmG[p[1]]), lmf) or
                          lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf) or
                          lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf))}
    lcm_dict = {}
    for i in range(len(G)):
        lcm_dict.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimalized = []
    for L in sorted(lcm_dict.keys(), key=R.order):
        if all(not div(L, L_) for L_ in minimalized):
            minimalized.append(L)
    new_pairs = set()
    for L in minimalized:
        # coprime leading monomials: the pair reduces to zero
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in lcm_dict[L]):
            new_pairs.add((min(lcm_dict[L]), len(G)))
    return G + [f], P | new_pairs


def _combine(rows: Sequence[Cofactors], coefficients: Sequence[PolyElement], size: int, ring: PolyRing) -> Cofactors:
    result = [ring.zero] * size
    for row, c in zip(rows, coefficients):
        if c:
            for j in range(size):
                if row[j]:
                    result[j] += c * row[j]
    return tuple(result)


def _scaled(row: Cofactors, factor) -> Cofactors:
    return tuple(c * factor for c in row)


def _monic(f: PolyElement, row: Cofactors) -> Tuple[PolyElement, Cofactors]:
    inv = f.ring.domain.one / f.LC
    return f * inv, _scaled(row, inv)


def minimalize(G: Sequence[PolyElement], T: Sequence[Cofactors]) -> Tuple[List[PolyElement], List[Cofactors]]:
    """Drop elements whose leading monomial is divisible by another's"""
    R = G[0].ring
    Gmin: List[PolyElement] = []
    Tmin: List[Cofactors] = []
    for k in sorted(range(len(G)), key=lambda k: R.order(G[k].LM)):
        f = G[k]
        if all(not R.monomial_div(f.LM, g.LM) for g in Gmin):
            Gmin.append(f)
            Tmin.append(T[k])
    return Gmin, Tmin


def interreduce(G: Sequence[PolyElement], T: Sequence[Cofactors], size: int) -> Tuple[List[PolyElement], List[Cofactors]]:
    """Reduced basis from a minimal one"""
    R = G[0].ring
    Gred: List[PolyElement] = []
    Tred: List[Cofactors] = []
    for i in range(len(G)):
        others = list(G[:i]) + list(G[i + 1:])
        other_rows = list(T[:i]) + list(T[i + 1:])
        if others:
            quotients, g = G[i].div(others)
            correction = _combine(other_rows, quotients, size, R)
            row = tuple(a - b for a, b in zip(T[i], correction))
        else:
            g, row = G[i], T[i]
        g, row = _monic(g, row)
        Gred.append(g)
        Tred.append(row)
    return Gred, Tred


# ========================================
# Driver
# ========================================

def buchberger(generators: Sequence[PolyElement], order: Optional[MonomialOrder] = None) -> GroebnerBasis:
    """
    Reduced Groebner basis of the ideal generated by `generators`.

    Args:
        generators: nonempty list of polynomials in one ring
        order: monomial order; defaults to the ring's own order

    Returns:
        GroebnerBasis whose transform expresses every basis element as a
        combination of the inputs.
    """
    if not generators:
        raise ValueError("buchberger needs at least one generator")
    R = generators[0].ring
    if any(f.ring != R for f in generators):
        raise ValueError("generators must lie in one ring")
    order = ring_order(R) if order is None else MonomialOrder(order)
    inputs = tuple(with_order(f, order) for f in generators)
    R = inputs[0].ring
    size = len(inputs)

    G: List[PolyElement] = []
    T: List[Cofactors] = []
    P: Set[Pair] = set()
    for j, f in enumerate(inputs):
        if not f:
            continue
        unit_row = tuple(R.one if k == j else R.zero for k in range(size))
        f, row = _monic(f, unit_row)
        G, P = update(G, P, f)
        T.append(row)

    if not G:
        logger.debug("buchberger: zero ideal")
        return GroebnerBasis((), order, R, inputs, ())

    reductions = 0
    while P:
        i, j = select(G, P)
        P.remove((i, j))
        s, mi, mj = spoly(G[i], G[j])
        row_s = tuple(a.mul_monom(mi) - b.mul_monom(mj) for a, b in zip(T[i], T[j]))
        quotients, r = s.div(G)
        reductions += 1
        if r:
            row_r = tuple(a - b for a, b in zip(row_s, _combine(T, quotients, size, R)))
            r, row_r = _monic(r, row_r)
            G, P = update(G, P, r)
            T.append(row_r)

    G, T = minimalize(G, T)
    G, T = interreduce(G, T, size)
    ranked = sorted(range(len(G)), key=lambda k: R.order(G[k].LM))
    logger.debug(f"buchberger: {size} inputs, {reductions} S-pairs reduced, basis size {len(G)}")
    return GroebnerBasis(
        generators=tuple(G[k] for k in ranked),
        order=order,
        ring=R,
        inputs=inputs,
        transform=tuple(T[k] for k in ranked),
    )
