# app/core/gradedpair/exterior.py
"""
Exterior algebra Λ(Q^n) on index subsets.

Monomials are strictly increasing index tuples; signs come from counting
the transpositions needed to sort a concatenation.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple

from app.core.exactalg import ONE, ZERO

Subset = Tuple[int, ...]


def basis(n: int, k: int) -> List[Subset]:
    """Λ^k basis in lexicographic order"""
    return list(combinations(range(n), k))


def full_basis(n: int) -> List[Subset]:
    return [s for k in range(n + 1) for s in basis(n, k)]


def merge_sign(left: Subset, right: Subset) -> int:
    """
    Sign of the permutation sorting left + right, or 0 when they share an index.
    """
    if set(left) & set(right):
        return 0
    inversions = sum(1 for a in left for b in right if a > b)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class ExteriorElement:
    """Element of Λ(Q^n): a finite combination of index-subset monomials"""
    n: int
    terms: Dict[Subset, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for subset, c in self.terms.items():
            subset = tuple(subset)
            if list(subset) != sorted(set(subset)) or any(i < 0 or i >= self.n for i in subset):
                raise ValueError(f"{subset} is not an increasing subset of range({self.n})")
            if c:
                clean[subset] = Fraction(c)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def monomial(cls, n: int, subset: Iterable[int], coefficient=1) -> "ExteriorElement":
        """Monomial e_{i1} ∧ ... ∧ e_{ik} in the given (possibly unsorted) order"""
        indices = tuple(subset)
        ordered = tuple(sorted(indices))
        if len(set(indices)) != len(indices):
            return cls(n, {})
        sign = 1
        items = list(indices)
        # bubble sort parity
        for i in range(len(items)):
            for j in range(len(items) - 1 - i):
                if items[j] > items[j + 1]:
                    items[j], items[j + 1] = items[j + 1], items[j]
                    sign = -sign
        return cls(n, {ordered: Fraction(coefficient) * sign})

    @classmethod
    def scalar(cls, n: int, value) -> "ExteriorElement":
        return cls(n, {(): Fraction(value)})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Optional[int]:
        """Common degree of all terms, None when inhomogeneous or zero"""
        degrees = {len(s) for s in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def component(self, k: int) -> "ExteriorElement":
        return ExteriorElement(self.n, {s: c for s, c in self.terms.items() if len(s) == k})

    def scalar_part(self) -> Fraction:
        return self.terms.get((), ZERO)

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        terms = dict(self.terms)
        for s, c in other.terms.items():
            terms[s] = terms.get(s, ZERO) + c
        return ExteriorElement(self.n, terms)

    def __neg__(self) -> "ExteriorElement":
        return self.scale(-ONE)

    def __sub__(self, other: "ExteriorElement") -> "ExteriorElement":
        return self + (-other)

    def scale(self, factor) -> "ExteriorElement":
        return ExteriorElement(self.n, {s: c * factor for s, c in self.terms.items()})

    def wedge(self, other: "ExteriorElement") -> "ExteriorElement":
        terms: Dict[Subset, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                sign = merge_sign(a, b)
                if sign:
                    key = tuple(sorted(a + b))
                    terms[key] = terms.get(key, ZERO) + sign * ca * cb
        return ExteriorElement(self.n, terms)

    __xor__ = wedge


def interior(index: int, form: ExteriorElement) -> ExteriorElement:
    """ι_{∂_index}: removes dx_index from position k with sign (-1)^k"""
    terms: Dict[Subset, Fraction] = {}
    for subset, c in form.terms.items():
        if index in subset:
            k = subset.index(index)
            rest = subset[:k] + subset[k + 1:]
            terms[rest] = terms.get(rest, ZERO) + (-c if k % 2 else c)
    return ExteriorElement(form.n, terms)


def contract(polyvector: ExteriorElement, form: ExteriorElement) -> ExteriorElement:
    """
    Full contraction v ⌟ ω.

    Convention: ι_{∂_{i1} ∧ ... ∧ ∂_{ik}} = ι_{∂_ik} ∘ ... ∘ ι_{∂_i1}, so that
    dx_I(∂_I) = 1 for every subset I.
    """
    result = ExteriorElement(form.n, {})
    for subset, c in polyvector.terms.items():
        piece = form
        for index in subset:
            piece = interior(index, piece)
        result = result + piece.scale(c)
    return result


def pair(form: ExteriorElement, polyvector: ExteriorElement) -> Fraction:
    """ω(v): the scalar part of v ⌟ ω"""
    return contract(polyvector, form).scalar_part()
