"""
Closed-form sampler expressions.

Grammar: numbers, coordinates x1..xD, constants pi and e, binary + - * / ^ (power, right
associative, binds tighter than unary minus), parentheses, and the functions sin, cos, exp.
"""

from __future__ import annotations

import ast
import math
import operator
import re

import numpy as np

from ..errors import BadExpression

_BINARY = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos}
_FUNCTIONS = {"sin": np.sin, "cos": np.cos, "exp": np.exp}
_CONSTANTS = {"pi": math.pi, "e": math.e}
_COORD = re.compile(r"x([1-9][0-9]*)$")


def _normalize(text: str) -> str:
    return text.replace("^", "**").replace("×", "*").replace("−", "-")


def parse_expression(text: str) -> ast.Expression:
    if not isinstance(text, str) or not text.strip():
        raise BadExpression("expression is empty")
    if "**" in text:
        raise BadExpression("use ^ for powers", details={"expression": text})
    try:
        tree = ast.parse(_normalize(text), mode="eval")
    except SyntaxError as exc:
        raise BadExpression(f"cannot parse '{text}': {exc.msg}", details={"expression": text}) from exc
    _validate(tree.body, text)
    return tree


def _validate(node, text):
    if isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
        _validate(node.left, text)
        _validate(node.right, text)
    elif isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        _validate(node.operand, text)
    elif isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCTIONS or len(node.args) != 1 or node.keywords:
            raise BadExpression(f"unsupported call in '{text}'", details={"expression": text})
        _validate(node.args[0], text)
    elif isinstance(node, ast.Name):
        if node.id not in _CONSTANTS and not _COORD.match(node.id):
            raise BadExpression(f"unknown name '{node.id}' in '{text}'", details={"expression": text})
    elif isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise BadExpression(f"unsupported literal in '{text}'", details={"expression": text})
    else:
        raise BadExpression(f"unsupported syntax in '{text}'", details={"expression": text})


def _eval(node, coords):
    if isinstance(node, ast.BinOp):
        return _BINARY[type(node.op)](_eval(node.left, coords), _eval(node.right, coords))
    if isinstance(node, ast.UnaryOp):
        return _UNARY[type(node.op)](_eval(node.operand, coords))
    if isinstance(node, ast.Call):
        return _FUNCTIONS[node.func.id](_eval(node.args[0], coords))
    if isinstance(node, ast.Name):
        if node.id in _CONSTANTS:
            return _CONSTANTS[node.id]
        axis = int(_COORD.match(node.id).group(1)) - 1
        if axis >= coords.shape[1]:
            raise BadExpression(f"coordinate {node.id} exceeds dimension {coords.shape[1]}")
        return coords[:, axis]
    return float(node.value)


def evaluate_expression(text: str, coords) -> np.ndarray:
    """
    Evaluate ``text`` at every row of ``coords`` (n x D).
    """
    tree = parse_expression(text)
    coords = np.asarray(coords, dtype=float)
    if coords.ndim == 1:
        coords = coords[:, None]
    with np.errstate(all="ignore"):
        try:
            values = _eval(tree.body, coords)
        except (ZeroDivisionError, OverflowError) as exc:
            raise BadExpression(f"'{text}' cannot be evaluated: {exc}") from exc
    values = np.broadcast_to(np.asarray(values, dtype=float), (coords.shape[0],)).copy()
    if not np.all(np.isfinite(values)):
        raise BadExpression(f"'{text}' is not finite on every point", details={"expression": text})
    return values
