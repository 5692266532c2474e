"""Plain-text matrix format.

One matrix row per line, entries separated by whitespace (or commas), ``#``
starts a comment. Entries may be arithmetic expressions such as
``-sqrt(3)/2`` or ``1/3``: numbers, unary ``+``/``-``, binary
``+ - * / **``, parentheses, ``sqrt(.)`` and ``pi``. Whitespace inside an
entry is only allowed within parentheses.
"""
import ast
import math
import operator

import numpy as np

from .errors import ParseError, RaggedRows

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos}
_FUNCS = {"sqrt": math.sqrt}
_NAMES = {"pi": math.pi}


def _eval(node):
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and type(node.value) in (int, float):
        return float(node.value)
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left), _eval(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        return _UNARY[type(node.op)](_eval(node.operand))
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
        return _FUNCS[node.func.id](_eval(node.args[0]))
    raise ValueError(f"unsupported expression element {type(node).__name__}")


def evaluate(expr):
    """Evaluate one matrix entry to a float."""
    try:
        value = _eval(ast.parse(expr.strip(), mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError) as exc:
        raise ValueError(f"cannot evaluate {expr!r}: {exc}") from None
    if not math.isfinite(value):
        raise ValueError(f"entry {expr!r} is not finite")
    return value


def _split(line):
    """Entries of one line with their 0-based start columns."""
    atoms = []
    depth = 0
    start = None
    for col, ch in enumerate(line):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        sep = depth == 0 and (ch.isspace() or ch == ",")
        if sep:
            if start is not None:
                atoms.append((start, line[start:col]))
                start = None
        elif start is None:
            start = col
    if start is not None:
        atoms.append((start, line[start:]))
    if depth != 0:
        raise ValueError("unbalanced parentheses")
    return atoms


def parse_matrix(text):
    """Parse the text format into a float array of shape ``(rows, cols)``."""
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        try:
            atoms = _split(line)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        row = []
        for col, atom in atoms:
            try:
                row.append(evaluate(atom))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col + 1) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise RaggedRows(f"row has {len(row)} entries, expected {width}", lineno)
        rows.append(row)
    if not rows:
        raise ParseError("no matrix rows found")
    return np.array(rows, dtype=float)


def read_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def render_matrix(M):
    """Text form that :func:`parse_matrix` reads back bit-exactly."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    return "\n".join(" ".join(repr(float(v)) for v in row) for row in M) + "\n"
