# tests/conftest.py
from fractions import Fraction

import pytest

from app.core.boundary import PolyMatrix, mf_validate
from app.core.bulk import LGPair, TraceBackend, bulk_trace, jacobian_ideal, milnor_algebra
from app.core.groebner import make_ring


def univariate_mf(n: int, a: int, name: str = ""):
    """(x^a | x^(n-a)) factorizing x^n"""
    R = make_ring(["x"])
    x = R.gens[0]
    F = PolyMatrix.from_rows(R, [[x**a]], cols=1)
    G = PolyMatrix.from_rows(R, [[x**(n - a)]], cols=1)
    return mf_validate(1, 1, F, G, x**n, name or f"P{a}")


def trace_for(W, backend=TraceBackend.RESIDUE, scale=Fraction(1)):
    ma = milnor_algebra(jacobian_ideal(LGPair(W)))
    return ma, bulk_trace(ma, backend, scale)


@pytest.fixture
def ring_x():
    R = make_ring(["x"])
    return R, R.gens[0]


@pytest.fixture
def ring_xy():
    R = make_ring(["x", "y"])
    return (R,) + tuple(R.gens)


@pytest.fixture
def cubic_objects():
    """(x | x²) and (x² | x) over W = x³"""
    return [univariate_mf(3, 1), univariate_mf(3, 2)]


@pytest.fixture
def cubic_trace(ring_x):
    _, x = ring_x
    return trace_for(x**3)[1]
