# app/utils/helpers.py
import hashlib
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from app.core.exactalg import MatrixQ


def sha256_text(text: str) -> str:
    """Hash of a problem file as stored in reports"""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def rational(value) -> str:
    """Exact rational as 'p/q' (or 'n' for integers)"""
    return str(Fraction(value))


def rationals(values: Sequence) -> List[str]:
    return [rational(v) for v in values]


def matrix_strings(matrix: MatrixQ) -> List[List[str]]:
    return matrix.to_strings()


def position_key(position: Tuple[int, int]) -> str:
    return f"{position[0]},{position[1]}"


def keyed_dims(dims: Dict[Tuple[int, int], int]) -> Dict[str, int]:
    """Position-keyed dimensions with string keys, in sorted order"""
    return {position_key(pos): n for pos, n in sorted(dims.items())}
