"""Numeric literals for scenario files.

Numbers may be written as decimals or as small expressions over the
whitelist ``sqrt``, ``pi``, ``e`` with ``+ - * / **`` and parentheses,
e.g. ``"sqrt(2)*7"``.  Index templates may also refer to bound variables
such as ``n``.
"""

from __future__ import annotations

import ast
import math
import operator

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNOPS = {ast.USub: operator.neg, ast.UAdd: operator.pos}
_CONSTANTS = {"pi": math.pi, "e": math.e, "inf": math.inf}
_FUNCTIONS = {"sqrt": math.sqrt}


class ExpressionError(ValueError):
    pass


def evaluate(value, env: dict | None = None) -> float:
    """Evaluate a number or whitelisted expression string to a float."""
    if isinstance(value, bool):
        raise ExpressionError(f"expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise ExpressionError(f"expected a number or expression, got {value!r}")
    try:
        tree = ast.parse(value.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {value!r}") from exc
    return float(_eval(tree.body, env or {}, value))


def _eval(node, env, src):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left, env, src), _eval(node.right, env, src))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
        return _UNOPS[type(node.op)](_eval(node.operand, env, src))
    if isinstance(node, ast.Name):
        if node.id in env:
            return env[node.id]
        if node.id in _CONSTANTS:
            return _CONSTANTS[node.id]
        raise ExpressionError(f"unknown name {node.id!r} in {src!r}")
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCTIONS
            and len(node.args) == 1 and not node.keywords):
        return _FUNCTIONS[node.func.id](_eval(node.args[0], env, src))
    raise ExpressionError(f"disallowed construct in {src!r}")
