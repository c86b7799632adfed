"""Parse textual expressions such as ``1+a/2-b`` or long certificate strings.

Accepted: integers, identifiers, ``+ - * /``, ``^`` or ``**`` with integer
exponents, parentheses, implicit products of a number and a name (``2n``),
and the Unicode minus sign.
"""

from __future__ import annotations

import ast
import re

from .poly import Polynomial
from .ratfunc import RationalFunction


class ParseError(ValueError):
    pass


_IMPLICIT = re.compile(r"(\d)\s*([A-Za-z_(])")


def _prepare(text: str) -> str:
    text = text.replace("−", "-").replace("^", "**").strip()
    text = " ".join(text.split())
    return _IMPLICIT.sub(r"\1*\2", text)


def _walk(node) -> RationalFunction:
    if isinstance(node, ast.Expression):
        return _walk(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return RationalFunction.coerce(node.value)
    if isinstance(node, ast.Name):
        return RationalFunction.var(node.id)
    if isinstance(node, ast.UnaryOp):
        v = _walk(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            e = _walk(node.right)
            if not e.is_constant() or e.constant_value().denominator != 1:
                raise ParseError("exponent must be an integer")
            return _walk(node.left) ** int(e.constant_value())
        left, right = _walk(node.left), _walk(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if right.is_zero():
                raise ParseError("division by zero")
            return left / right
    raise ParseError(f"unsupported syntax: {ast.dump(node)[:60]}")


def parse_rational(text: str) -> RationalFunction:
    """Parse ``text`` into a normalised :class:`RationalFunction`."""
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty expression")
    try:
        tree = ast.parse(_prepare(text), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    return _walk(tree)


def parse_poly(text: str) -> Polynomial:
    r = parse_rational(text)
    if not r.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial")
    return r.num.scale(1 / r.den.constant_value())
