# app/core/bulk/koszul.py
"""
Degree-truncated Koszul complex of (∂_1 W, ..., ∂_d W) on polynomial
polyvectors.

The node in degree -k is spanned by x^m e_I with |I| = k and
deg x^m <= N - Σ_{i∈I} deg ∂_i W, which makes ι_W = ∂W⌟ close on the
truncation:

    ι(f e_I) = Σ_k (-1)^k ∂_{I_k}W · f · e_{I \\ I_k}
"""
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from loguru import logger

from app.core.bulk.jacobian import LGPair
from app.core.exactalg import MatrixQ
from app.core.groebner import Monomial, monomials_up_to, to_terms, total_degree
from app.core.homology import FiniteComplex, cohomology_dims

BasisKey = Tuple[Tuple[int, ...], Monomial]


@dataclass(frozen=True)
class KoszulTruncation:
    degree_bound: int
    node_dims: Dict[int, int]
    cohomology: Dict[int, int]


@dataclass(frozen=True)
class KoszulResult:
    pair: LGPair
    low: KoszulTruncation
    high: KoszulTruncation

    @property
    def stabilized(self) -> bool:
        return self.low.cohomology == self.high.cohomology

    @property
    def cohomology(self) -> Dict[int, int]:
        return self.low.cohomology

    @property
    def negative_vanishes(self) -> bool:
        return all(n == 0 for k, n in self.low.cohomology.items() if k < 0)


def _node_basis(d: int, weights: List[int], k: int, bound: int) -> List[BasisKey]:
    keys: List[BasisKey] = []
    for subset in combinations(range(d), k):
        room = bound - sum(weights[i] for i in subset)
        if room < 0:
            continue
        keys.extend((subset, m) for m in monomials_up_to(d, room))
    return keys


def koszul_complex(pair: LGPair, bound: int) -> FiniteComplex:
    """Truncated Koszul complex in degrees -d..0"""
    d = pair.d
    partials = [to_terms(f) for f in pair.partials()]
    weights = [max(total_degree(f), 0) for f in pair.partials()]
    bases = {-k: _node_basis(d, weights, k, bound) for k in range(d + 1)}
    index = {deg: {key: i for i, key in enumerate(keys)} for deg, keys in bases.items()}

    maps = []
    for degree in range(-d, 0):
        target = index[degree + 1]
        columns = []
        for subset, m in bases[degree]:
            column: Dict[int, object] = {}
            for pos, i in enumerate(subset):
                rest = subset[:pos] + subset[pos + 1:]
                sign = -1 if pos % 2 else 1
                for exps, c in partials[i].items():
                    key = (rest, tuple(a + b for a, b in zip(exps, m)))
                    row = target[key]
                    column[row] = column.get(row, 0) + sign * c
            columns.append({r: v for r, v in column.items() if v})
        maps.append(MatrixQ.from_sparse_columns(columns, len(target)))
    dims = tuple(len(bases[deg]) for deg in range(-d, 1))
    return FiniteComplex(-d, dims, tuple(maps))


def _truncation(pair: LGPair, bound: int) -> KoszulTruncation:
    complex_ = koszul_complex(pair, bound)
    dims = cohomology_dims(complex_)
    logger.debug(f"Koszul complex of {pair} at N={bound}: H = {dims}")
    return KoszulTruncation(bound, {k: complex_.dim(k) for k in complex_.degrees}, dims)


def koszul_cohomology_truncated(pair: LGPair, N: Optional[int] = None) -> KoszulResult:
    """
    Cohomology dimensions of the truncated Koszul complex at N and N + deg W.

    Args:
        pair: the potential
        N: polynomial degree bound, at least deg W; defaults to 2·deg W

    Raises:
        ValueError: N below deg W
    """
    if N is None:
        N = 2 * pair.degree
    if N < pair.degree:
        raise ValueError(f"degree bound {N} is below deg W = {pair.degree}")
    low = _truncation(pair, N)
    high = _truncation(pair, N + pair.degree)
    result = KoszulResult(pair, low, high)
    if not result.stabilized:
        logger.info(f"Koszul cohomology of {pair} not stable between N={N} and N={N + pair.degree}")
    return result
