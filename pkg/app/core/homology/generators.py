# app/core/homology/generators.py
"""
Seeded random complexes and double complexes.

Everything is assembled from elementary pieces whose cohomology is known
(dots, isomorphism pairs, squares, zig-zag staircases) and then conjugated
by random invertible base changes so that nothing is in normal form.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from app.core.exactalg import ONE, ZERO, MatrixQ
from app.core.homology.compare import DoubleComplexMorphism
from app.core.homology.complexes import DoubleComplex, FiniteComplex, Position


def random_invertible(rng: random.Random, n: int, spread: int = 2) -> MatrixQ:
    """Permutation times unitriangular factors with small integer entries"""
    lower = [[ONE if i == j else (Fraction(rng.randint(-spread, spread)) if i > j else ZERO)
              for j in range(n)] for i in range(n)]
    upper = [[ONE if i == j else (Fraction(rng.randint(-spread, spread)) if i < j else ZERO)
              for j in range(n)] for i in range(n)]
    order = list(range(n))
    rng.shuffle(order)
    perm = [[ONE if order[i] == j else ZERO for j in range(n)] for i in range(n)]
    return MatrixQ.from_rows(perm, cols=n) @ MatrixQ.from_rows(lower, cols=n) @ MatrixQ.from_rows(upper, cols=n)


# ========================================
# Piece assembly
# ========================================

@dataclass
class _Assembly:
    """Direct sum of one-dimensional pieces linked by unit maps"""
    nodes: Dict[Position, int] = field(default_factory=dict)
    edges: List[Tuple[str, Position, int, Position, int]] = field(default_factory=list)

    def slot(self, pos: Position) -> int:
        index = self.nodes.get(pos, 0)
        self.nodes[pos] = index + 1
        return index

    def add_piece(self, positions: List[Position], links: List[Tuple[str, int, int]]) -> None:
        slots = [self.slot(pos) for pos in positions]
        for kind, a, b in links:
            self.edges.append((kind, positions[a], slots[a], positions[b], slots[b]))

    def fits(self, positions: List[Position], max_dim: int) -> bool:
        counts: Dict[Position, int] = {}
        for pos in positions:
            counts[pos] = counts.get(pos, 0) + 1
        return all(self.nodes.get(pos, 0) + c <= max_dim for pos, c in counts.items())

    def matrices(self, kind: str) -> Dict[Position, MatrixQ]:
        grids: Dict[Position, List[List[Fraction]]] = {}
        for edge_kind, src, i, dst, j in self.edges:
            if edge_kind != kind:
                continue
            grid = grids.setdefault(src, [[ZERO] * self.nodes[src] for _ in range(self.nodes[dst])])
            grid[j][i] = ONE
        return {pos: MatrixQ.from_rows(grid, cols=self.nodes[pos]) for pos, grid in grids.items()}


def _conjugate(matrices: Dict[Position, MatrixQ], step: Position, bases: Dict[Position, MatrixQ],
               inverses: Dict[Position, MatrixQ]) -> Dict[Position, MatrixQ]:
    result = {}
    for (p, q), m in matrices.items():
        target = (p + step[0], q + step[1])
        result[(p, q)] = bases[target] @ m @ inverses[(p, q)]
    return result


def _piece(rng: random.Random, width: int, height: int, p_min: int = 0) -> Tuple[List[Position], List[Tuple[str, int, int]]]:
    """One random elementary piece inside columns p_min..p_min+width-1 and rows 0..height-1"""
    kinds = ["dot", "vertical", "horizontal", "square", "staircase"]
    kind = rng.choice(kinds)
    p = rng.randint(p_min, p_min + width - 1)
    q = rng.randint(0, height - 1)
    if kind == "vertical" and q + 1 < height:
        return [(p, q), (p, q + 1)], [("d1", 0, 1)]
    if kind == "horizontal" and p + 1 < p_min + width:
        return [(p, q), (p + 1, q)], [("d2", 0, 1)]
    if kind == "square" and p + 1 < p_min + width and q + 1 < height:
        positions = [(p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1)]
        return positions, [("d2", 0, 1), ("d1", 0, 2), ("d1", 1, 3), ("d2", 2, 3)]
    if kind == "staircase":
        longest = min(p_min + width - 1 - p, q + 1)
        if longest >= 1:
            length = rng.randint(1, longest)
            # x0 -d2-> y1 <-d1- x1 -d2-> y2 ... x_(length-1) -d2-> y_length
            positions = [(p, q)]
            links = []
            previous_x = 0
            for i in range(1, length + 1):
                positions.append((p + i, q - i + 1))
                y = len(positions) - 1
                links.append(("d2", previous_x, y))
                if i < length:
                    positions.append((p + i, q - i))
                    previous_x = len(positions) - 1
                    links.append(("d1", previous_x, y))
            return positions, links
    return [(p, q)], []


def random_double_complex(rng: random.Random, width: int = 4, height: int = 4, max_dim: int = 3,
                          pieces: Optional[int] = None, p_min: int = 0) -> DoubleComplex:
    """
    Random double complex supported in [p_min, p_min+width) x [0, height).

    Args:
        rng: seeded random source
        width, height: support rectangle
        max_dim: bound on every node dimension
        pieces: number of pieces to try (default 2*width*height)
    """
    assembly = _Assembly()
    attempts = pieces if pieces is not None else 2 * width * height
    for _ in range(attempts):
        positions, links = _piece(rng, width, height, p_min)
        if assembly.fits(positions, max_dim):
            assembly.add_piece(positions, links)
    return _scramble(rng, assembly)


def _scramble(rng: random.Random, assembly: _Assembly) -> DoubleComplex:
    bases = {pos: random_invertible(rng, n) for pos, n in assembly.nodes.items()}
    inverses = {pos: g.inverse() for pos, g in bases.items()}
    d1 = _conjugate(assembly.matrices("d1"), (0, 1), bases, inverses)
    d2 = _conjugate(assembly.matrices("d2"), (1, 0), bases, inverses)
    return DoubleComplex(dict(assembly.nodes), d1, d2).validate()


def random_complex(rng: random.Random, length: int = 3, max_dim: int = 3, start: int = 0) -> FiniteComplex:
    """Random bounded complex in degrees start .. start+length-1"""
    assembly = _Assembly()
    for _ in range(3 * length):
        k = rng.randint(0, length - 1)
        if rng.random() < 0.6 and k + 1 < length:
            positions, links = [(0, k), (0, k + 1)], [("d1", 0, 1)]
        else:
            positions, links = [(0, k)], []
        if assembly.fits(positions, max_dim):
            assembly.add_piece(positions, links)
    K = _scramble(rng, assembly)
    dims = {start + k: K.dim(0, k) for k in range(length)}
    maps = {start + k: K.vertical(0, k) for k in range(length - 1)}
    return FiniteComplex.from_dict(dims, maps).validate()


# ========================================
# Inclusions for filtered comparison
# ========================================

def _augment(rng: random.Random, K: DoubleComplex, extra: _Assembly) -> DoubleComplexMorphism:
    """L = K ⊕ extra (scrambled), with τ the inclusion of K"""
    positions = set(K.nodes) | set(extra.nodes)
    nodes = {pos: K.dim(*pos) + extra.nodes.get(pos, 0) for pos in positions}
    extra_d1 = extra.matrices("d1")
    extra_d2 = extra.matrices("d2")

    def block_sum(a: MatrixQ, b: Optional[MatrixQ], src: Position, dst: Position) -> MatrixQ:
        rows, cols = nodes.get(dst, 0), nodes.get(src, 0)
        grid = [[ZERO] * cols for _ in range(rows)]
        for i in range(a.rows):
            for j in range(a.cols):
                grid[i][j] = a[i, j]
        if b is not None:
            for i in range(b.rows):
                for j in range(b.cols):
                    grid[a.rows + i][a.cols + j] = b[i, j]
        return MatrixQ.from_rows(grid, cols=cols)

    d1, d2 = {}, {}
    for (p, q) in positions:
        if nodes.get((p, q + 1)):
            d1[(p, q)] = block_sum(K.vertical(p, q), extra_d1.get((p, q)), (p, q), (p, q + 1))
        if nodes.get((p + 1, q)):
            d2[(p, q)] = block_sum(K.horizontal(p, q), extra_d2.get((p, q)), (p, q), (p + 1, q))
    plain = DoubleComplex(nodes, d1, d2)

    bases = {pos: random_invertible(rng, n) for pos, n in nodes.items()}
    inverses = {pos: g.inverse() for pos, g in bases.items()}
    L = DoubleComplex(
        nodes,
        _conjugate(plain.d1, (0, 1), bases, inverses),
        _conjugate(plain.d2, (1, 0), bases, inverses),
    ).validate()
    maps = {}
    for pos in positions:
        if not K.dim(*pos):
            continue
        inclusion = MatrixQ.from_rows(
            [[ONE if i == j else ZERO for j in range(K.dim(*pos))] for i in range(nodes[pos])],
            cols=K.dim(*pos),
        )
        maps[pos] = bases[pos] @ inclusion
    return DoubleComplexMorphism(K, L, maps)


def quasi_isomorphic_inclusion(rng: random.Random, K: DoubleComplex, extras: int = 2) -> DoubleComplexMorphism:
    """Inclusion of K into K ⊕ (acyclic vertical pairs): every column stays quasi-isomorphic"""
    extra = _Assembly()
    qs = [q for _, q in K.support] or [0]
    ps = [p for p, _ in K.support] or [0]
    for _ in range(extras):
        p = rng.randint(min(ps), max(ps))
        q = rng.randint(0, max(qs))
        extra.add_piece([(p, q), (p, q + 1)], [("d1", 0, 1)])
    return _augment(rng, K, extra)


def violating_inclusion(rng: random.Random, K: DoubleComplex) -> DoubleComplexMorphism:
    """Inclusion of K into K ⊕ (a dot): one column gains vertical cohomology"""
    extra = _Assembly()
    ps = [p for p, _ in K.support] or [0]
    qs = [q for _, q in K.support] or [0]
    extra.add_piece([(rng.randint(min(ps), max(ps)), rng.randint(0, max(qs)))], [])
    return _augment(rng, K, extra)
