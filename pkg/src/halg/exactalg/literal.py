"""Parsing of coefficient and polynomial literals such as ``(a^2-1)/(2*a)`` or
``D+2*Lm``.

The grammar is the arithmetic subset of Python expressions: integers,
identifiers, ``+ - * /``, parentheses and ``^`` (or ``**``) with a nonnegative
integer exponent.  ``^`` is rewritten to ``**`` so that it binds tighter than
the additive operators; Python's own parser then does the tokenizing.
"""
from __future__ import annotations

import ast
from typing import Sequence

from .formal import VARS, FormalPoly
from .scalar import Scalar, ZeroDenominator


class LiteralError(ValueError):
    pass


def parse_formal(text: str, params: Sequence[str] = (), formal: Sequence[str] = VARS) -> FormalPoly:
    """Parse a polynomial in the formal variables `formal` with coefficients in
    QQ(params).  Division is only allowed by formal-variable-free expressions."""
    if not isinstance(text, str):
        if isinstance(text, int):
            return FormalPoly.const(text)
        raise LiteralError(f"expected a string literal, got {text!r}")
    try:
        tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise LiteralError(f"cannot parse {text!r}: {exc.msg}") from None
    return _Eval(tuple(params), tuple(formal), text).visit(tree.body)


def parse_scalar(text: str, params: Sequence[str] = ()) -> Scalar:
    p = parse_formal(text, params, formal=())
    return p.constant_term()


class _Eval:
    def __init__(self, params, formal, text):
        self.params = params
        self.formal = formal
        self.text = text

    def fail(self, why: str):
        raise LiteralError(f"{why} in {self.text!r}")

    def visit(self, node) -> FormalPoly:
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                self.fail(f"unsupported constant {node.value!r}")
            return FormalPoly.const(node.value)
        if isinstance(node, ast.Name):
            if node.id in self.formal:
                return FormalPoly.var(node.id)
            if node.id in self.params:
                return FormalPoly.const(Scalar.param(node.id, self.params))
            self.fail(f"unknown identifier {node.id!r}")
        if isinstance(node, ast.UnaryOp):
            inner = self.visit(node.operand)
            if isinstance(node.op, ast.USub):
                return -inner
            if isinstance(node.op, ast.UAdd):
                return inner
            self.fail("unsupported unary operator")
        if isinstance(node, ast.BinOp):
            left = self.visit(node.left)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and type(node.right.value) is int):
                    self.fail("exponent must be a nonnegative integer literal")
                if node.right.value < 0:
                    self.fail("negative exponent")
                return left ** node.right.value
            right = self.visit(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant():
                    self.fail("division by a formal-variable expression")
                d = right.constant_term()
                if d.is_zero():
                    raise ZeroDenominator(f"division by zero in {self.text!r}")
                return left.scale(d.inverse())
            self.fail("unsupported operator")
        self.fail(f"unsupported syntax {type(node).__name__}")
