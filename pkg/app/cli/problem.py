# app/cli/problem.py
"""
Problem files.

    # comment
    ring x, y;
    W = x^3 + y^3;
    option truncate = 8;
    mf P = [[x]] | [[x^2]];
    node (0,0) = 1;
    d1 (0,0) = [[1]];
    d2 (0,0) = [[1],[0]];

Statements end with ';'. Expressions use '^' for powers, '*' is optional
and coefficients are rationals 'p/q'.
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from loguru import logger
from sympy import Float, Symbol
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)
from sympy.polys.rings import PolyElement

from app.core.boundary import MatrixFactorization, PolyMatrix, mf_validate
from app.core.bulk import LGPair
from app.core.exceptions import NotAFactorization, ProblemSyntaxError, SemanticError
from app.core.exactalg import MatrixQ
from app.core.groebner import MonomialOrder, format_poly, make_ring

TRANSFORMATIONS = standard_transformations + (implicit_multiplication, convert_xor)

OPTION_KEYS = ("order", "backend", "trace", "scale", "truncate", "window")

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
POSITION = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")

Position = Tuple[int, int]


@dataclass
class ProblemSpec:
    variables: Tuple[str, ...]
    W: Optional[PolyElement] = None
    factorizations: Dict[str, MatrixFactorization] = field(default_factory=dict)
    options: Dict[str, str] = field(default_factory=dict)
    nodes: Dict[Position, int] = field(default_factory=dict)
    d1: Dict[Position, MatrixQ] = field(default_factory=dict)
    d2: Dict[Position, MatrixQ] = field(default_factory=dict)

    @property
    def pair(self) -> LGPair:
        if self.W is None:
            raise SemanticError("problem declares no potential W")
        return LGPair(self.W)

    @property
    def has_double_complex(self) -> bool:
        return bool(self.nodes)


# ========================================
# Lexing
# ========================================

@dataclass
class Statement:
    text: str
    offset: int
    source: str

    def location(self, index: int) -> Tuple[int, int]:
        """Line and column of a character index inside the statement"""
        absolute = self.offset + index
        line = self.source.count("\n", 0, absolute) + 1
        column = absolute - (self.source.rfind("\n", 0, absolute) + 1) + 1
        return line, column

    def syntax_error(self, message: str, index: int = 0, expected: Tuple[str, ...] = ()) -> ProblemSyntaxError:
        line, column = self.location(index)
        return ProblemSyntaxError(message, line, column, expected)

    def semantic_error(self, message: str, index: int = 0) -> SemanticError:
        line, column = self.location(index)
        return SemanticError(message, line, column)


def _strip_comments(text: str) -> str:
    return "\n".join(
        line.split("#", 1)[0].ljust(len(line)) for line in text.split("\n")
    )


def split_statements(text: str) -> List[Statement]:
    cleaned = _strip_comments(text)
    statements = []
    start = 0
    for index, char in enumerate(cleaned):
        if char != ";":
            continue
        chunk = cleaned[start:index]
        lead = len(chunk) - len(chunk.lstrip())
        if chunk.strip():
            statements.append(Statement(chunk.strip(), start + lead, text))
        start = index + 1
    rest = cleaned[start:]
    if rest.strip():
        lead = len(rest) - len(rest.lstrip())
        stmt = Statement(rest.strip(), start + lead, text)
        raise stmt.syntax_error("statement is missing its terminator", len(stmt.text), (";",))
    return statements


# ========================================
# Expressions and matrices
# ========================================

class _Context:
    def __init__(self, variables: Tuple[str, ...], order: MonomialOrder):
        self.variables = variables
        self.ring = make_ring(variables, order)
        self.symbols = {name: Symbol(name) for name in variables}

    def poly(self, stmt: Statement, text: str, index: int) -> PolyElement:
        if not text.strip():
            raise stmt.syntax_error("empty expression", index, ("expression",))
        try:
            expr = parse_expr(text, local_dict=dict(self.symbols), transformations=TRANSFORMATIONS)
        except Exception as exc:
            raise stmt.syntax_error(f"cannot parse expression '{text.strip()}': {exc}", index, ("expression",))
        if expr.atoms(Float):
            raise stmt.semantic_error(f"floating-point literal in '{text.strip()}'", index)
        unknown = sorted(str(s) for s in expr.free_symbols if str(s) not in self.symbols)
        if unknown:
            raise stmt.semantic_error(f"unknown variable {', '.join(unknown)}", index)
        try:
            return self.ring.from_expr(expr)
        except ValueError:
            raise stmt.semantic_error(f"'{text.strip()}' is not a polynomial in {', '.join(self.variables)}", index)


def _split_top(text: str, base: int) -> List[Tuple[str, int]]:
    """Split on commas outside brackets, keeping offsets"""
    parts, depth, start = [], 0, 0
    for index, char in enumerate(text):
        if char in "([":
            depth += 1
        elif char in ")]":
            depth -= 1
        elif char == "," and depth == 0:
            parts.append((text[start:index], base + start))
            start = index + 1
    parts.append((text[start:], base + start))
    return parts


def _matching(text: str, open_index: int) -> int:
    depth = 0
    for index in range(open_index, len(text)):
        if text[index] == "[":
            depth += 1
        elif text[index] == "]":
            depth -= 1
            if depth == 0:
                return index
    return -1


def parse_matrix_literal(stmt: Statement, text: str, base: int) -> List[Tuple[str, int]]:
    """'[[a, b], [c, d]]' -> rows of (entry text, offset)"""
    body = text.strip()
    lead = base + len(text) - len(text.lstrip())
    if not body.startswith("[") or _matching(body, 0) != len(body) - 1:
        raise stmt.syntax_error("malformed matrix literal", lead, ("[[", "]]"))
    rows = []
    for row_text, offset in _split_top(body[1:-1], lead + 1):
        row = row_text.strip()
        row_lead = offset + len(row_text) - len(row_text.lstrip())
        if not row.startswith("[") or _matching(row, 0) != len(row) - 1:
            raise stmt.syntax_error("matrix row must be bracketed", row_lead, ("[",))
        rows.append(_split_top(row[1:-1], row_lead + 1))
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise stmt.semantic_error("matrix rows have different lengths", lead)
    return rows


def _rational_matrix(stmt: Statement, text: str, base: int) -> MatrixQ:
    rows = parse_matrix_literal(stmt, text, base)
    values = []
    for row in rows:
        entries = []
        for entry, offset in row:
            try:
                expr = parse_expr(entry, transformations=TRANSFORMATIONS)
            except Exception as exc:
                raise stmt.syntax_error(f"cannot parse entry '{entry.strip()}': {exc}", offset, ("rational",))
            if not expr.is_Rational:
                raise stmt.semantic_error(f"entry '{entry.strip()}' is not a rational number", offset)
            entries.append(Fraction(int(expr.p), int(expr.q)))
        values.append(entries)
    return MatrixQ.from_rows(values, cols=len(values[0]) if values else 0)


# ========================================
# Statements
# ========================================

def _position(stmt: Statement, text: str, base: int) -> Tuple[Position, int]:
    match = POSITION.match(text)
    if not match:
        raise stmt.syntax_error("expected a node position", base, ("(p,q)",))
    return (int(match.group(1)), int(match.group(2))), match.end()


def _assignment(stmt: Statement, text: str, base: int) -> Tuple[str, int]:
    stripped = text.lstrip()
    index = base + len(text) - len(stripped)
    if not stripped.startswith("="):
        raise stmt.syntax_error("expected '='", index, ("=",))
    return stripped[1:], index + 1


def parse_problem(text: str, order: Optional[str] = None) -> ProblemSpec:
    """
    Parse a problem file.

    Args:
        text: problem source
        order: monomial order overriding any 'option order' statement

    Raises:
        ProblemSyntaxError: malformed statement, with line, column and expected tokens
        SemanticError: unknown variable, shape mismatch or a factorization of another W
    """
    statements = split_statements(text)
    ring_stmt: Optional[Statement] = None
    options: Dict[str, str] = {}
    rest: List[Tuple[str, Statement, str, int]] = []

    for stmt in statements:
        match = IDENTIFIER.match(stmt.text)
        keyword = match.group(0) if match else ""
        tail, base = stmt.text[len(keyword):], len(keyword)
        if keyword == "ring":
            if ring_stmt is not None:
                raise stmt.semantic_error("ring declared twice")
            ring_stmt = stmt
        elif keyword == "option":
            key_match = IDENTIFIER.match(tail.lstrip())
            if not key_match:
                raise stmt.syntax_error("expected an option name", base + 1, OPTION_KEYS)
            key = key_match.group(0)
            if key not in OPTION_KEYS:
                raise stmt.semantic_error(f"unknown option '{key}'", base + 1)
            key_end = base + len(tail) - len(tail.lstrip()) + len(key)
            value, _ = _assignment(stmt, stmt.text[key_end:], key_end)
            if not value.strip():
                raise stmt.syntax_error("option needs a value", len(stmt.text), ("value",))
            options[key] = value.strip()
        elif keyword in ("W", "mf", "node", "d1", "d2"):
            rest.append((keyword, stmt, tail, base))
        else:
            raise stmt.syntax_error(
                f"unknown statement '{keyword or stmt.text[:10]}'", 0, ("ring", "W", "mf", "option", "node", "d1", "d2")
            )

    spec = ProblemSpec(variables=(), options=options)
    context: Optional[_Context] = None
    if ring_stmt is not None:
        names = [n.strip() for n in ring_stmt.text[len("ring"):].split(",")]
        bad = [n for n in names if not IDENTIFIER.fullmatch(n)]
        if bad:
            raise ring_stmt.syntax_error(f"invalid variable name '{bad[0]}'", len("ring") + 1, ("identifier",))
        if len(set(names)) != len(names):
            raise ring_stmt.semantic_error("duplicate variable name")
        try:
            chosen = MonomialOrder(order or options.get("order", MonomialOrder.DEGREVLEX.value))
        except ValueError:
            raise ring_stmt.semantic_error(f"unknown monomial order '{order or options.get('order')}'")
        context = _Context(tuple(names), chosen)
        spec.variables = tuple(names)

    pending: List[Tuple[str, Statement, str, int]] = []
    for keyword, stmt, tail, base in rest:
        if keyword == "W":
            if context is None:
                raise stmt.semantic_error("W appears before any ring declaration")
            if spec.W is not None:
                raise stmt.semantic_error("W declared twice")
            expr, index = _assignment(stmt, tail, base)
            spec.W = context.poly(stmt, expr, index)
            try:
                spec.pair
            except ValueError as exc:
                raise stmt.semantic_error(str(exc), index)
        else:
            pending.append((keyword, stmt, tail, base))

    for keyword, stmt, tail, base in pending:
        if keyword == "mf":
            _factorization(spec, context, stmt, tail, base)
        elif keyword == "node":
            position, end = _position(stmt, tail.lstrip(), base + len(tail) - len(tail.lstrip()))
            value, index = _assignment(stmt, tail.lstrip()[end:], base + len(tail) - len(tail.lstrip()) + end)
            if not value.strip().isdigit():
                raise stmt.syntax_error("node dimension must be a natural number", index, ("natural",))
            spec.nodes[position] = int(value.strip())
        else:
            lead = base + len(tail) - len(tail.lstrip())
            position, end = _position(stmt, tail.lstrip(), lead)
            value, index = _assignment(stmt, tail.lstrip()[end:], lead + end)
            target = spec.d1 if keyword == "d1" else spec.d2
            target[position] = _rational_matrix(stmt, value, index)

    _check_double_complex(spec)
    logger.debug(
        f"parsed problem: ring {spec.variables}, W = {format_poly(spec.W) if spec.W is not None else '-'}, "
        f"{len(spec.factorizations)} factorizations, {len(spec.nodes)} nodes"
    )
    return spec


def _factorization(spec: ProblemSpec, context: Optional[_Context], stmt: Statement, tail: str, base: int) -> None:
    if context is None or spec.W is None:
        raise stmt.semantic_error("factorization declared without a ring and W")
    stripped = tail.lstrip()
    lead = base + len(tail) - len(stripped)
    match = IDENTIFIER.match(stripped)
    if not match:
        raise stmt.syntax_error("expected a factorization name", lead, ("identifier",))
    name = match.group(0)
    if name in spec.factorizations:
        raise stmt.semantic_error(f"factorization {name} declared twice", lead)
    body, index = _assignment(stmt, stripped[match.end():], lead + match.end())
    split = _split_blocks(body)
    if split is None:
        raise stmt.syntax_error("expected two blocks 'F | G'", index, ("|",))
    blocks = []
    for text, offset in ((body[:split], index), (body[split + 1:], index + split + 1)):
        rows = parse_matrix_literal(stmt, text, offset)
        polys = [[context.poly(stmt, entry, at) for entry, at in row] for row in rows]
        blocks.append(PolyMatrix.from_rows(context.ring, polys, cols=len(polys[0]) if polys else 0))
    F, G = blocks
    try:
        spec.factorizations[name] = mf_validate(F.cols, F.rows, F, G, spec.W, name=name)
    except NotAFactorization as exc:
        raise stmt.semantic_error(f"factorization {name}: {exc} (D² ≠ W·I)", lead)


def _split_blocks(body: str) -> Optional[int]:
    depth = 0
    for index, char in enumerate(body):
        if char == "[":
            depth += 1
        elif char == "]":
            depth -= 1
        elif char == "|" and depth == 0:
            return index
    return None


def _check_double_complex(spec: ProblemSpec) -> None:
    for label, maps, step in (("d1", spec.d1, (0, 1)), ("d2", spec.d2, (1, 0))):
        for (p, q), matrix in maps.items():
            source = spec.nodes.get((p, q), 0)
            target = spec.nodes.get((p + step[0], q + step[1]), 0)
            if (matrix.rows, matrix.cols) != (target, source):
                raise SemanticError(
                    f"{label} at ({p},{q}) is {matrix.rows}x{matrix.cols}, nodes need {target}x{source}"
                )


# ========================================
# Pretty printing
# ========================================

def _format_poly_matrix(m: PolyMatrix) -> str:
    rows = ", ".join("[" + ", ".join(format_poly(m[i, j]) for j in range(m.cols)) + "]" for i in range(m.rows))
    return f"[{rows}]"


def _format_rational_matrix(m: MatrixQ) -> str:
    rows = ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in m.entries)
    return f"[{rows}]"


def format_problem(spec: ProblemSpec) -> str:
    """Canonical problem text; parsing it back yields an equal ProblemSpec"""
    lines = []
    for key, value in spec.options.items():
        lines.append(f"option {key} = {value};")
    if spec.variables:
        lines.append(f"ring {', '.join(spec.variables)};")
    if spec.W is not None:
        lines.append(f"W = {format_poly(spec.W)};")
    for name, a in spec.factorizations.items():
        lines.append(f"mf {name} = {_format_poly_matrix(a.F)} | {_format_poly_matrix(a.G)};")
    for (p, q), n in sorted(spec.nodes.items()):
        lines.append(f"node ({p},{q}) = {n};")
    for label, maps in (("d1", spec.d1), ("d2", spec.d2)):
        for (p, q), matrix in sorted(maps.items()):
            lines.append(f"{label} ({p},{q}) = {_format_rational_matrix(matrix)};")
    return "\n".join(lines) + "\n"
