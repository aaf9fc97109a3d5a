"""A small recursive-descent expression grammar for test functions.

Supported: numbers, the variable x, + - * /, ^ (right-associative, fractional
exponents allowed where the base is nonnegative), unary minus, parentheses,
and the functions abs, exp, sin, cos, sign.
"""

from __future__ import annotations

import re

import numpy as np

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)

_FUNCS = {
    "abs": np.abs,
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "sign": np.sign,
}


class ExpressionError(ValueError):
    """Malformed expression text."""


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            if text[pos:].strip():
                raise ExpressionError(f"unexpected character {text[pos:].strip()[0]!r}")
            break
        if match.group("num") is not None:
            tokens.append(("num", match.group("num")))
        elif match.group("name") is not None:
            tokens.append(("name", match.group("name")))
        else:
            tokens.append(("op", match.group("op")))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, value):
        kind, text = self.take()
        if text != value:
            raise ExpressionError(f"expected {value!r}, found {text!r}")

    def parse(self):
        node = self.expr()
        if self.pos != len(self.tokens):
            raise ExpressionError(f"trailing input at {self.tokens[self.pos][1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            rhs = self.term()
            node = (op, node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            _, op = self.take()
            rhs = self.unary()
            node = (op, node, rhs)
        return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            exponent = self.unary()  # right-associative
            return ("^", base, exponent)
        return base

    def atom(self):
        kind, text = self.take()
        if kind == "num":
            return ("const", float(text))
        if kind == "name":
            if text == "x":
                return ("var",)
            if text in _FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return ("call", text, arg)
            raise ExpressionError(f"unknown name {text!r}")
        if (kind, text) == ("op", "("):
            node = self.expr()
            self.expect(")")
            return node
        raise ExpressionError(f"unexpected token {text!r}")


def _power(base, exponent):
    # Integer exponents are sign-safe; fractional powers are defined only for
    # nonnegative bases and yield NaN otherwise (callers surface the error).
    rounded = np.round(exponent)
    if np.all(np.abs(exponent - rounded) < 1e-12):
        return np.power(base, rounded)
    with np.errstate(invalid="ignore"):
        return np.where(base >= 0, np.power(np.maximum(base, 0.0), exponent), np.nan)


def _evaluate(node, x):
    op = node[0]
    if op == "const":
        return np.full_like(x, node[1])
    if op == "var":
        return x
    if op == "neg":
        return -_evaluate(node[1], x)
    if op == "call":
        return _FUNCS[node[1]](_evaluate(node[2], x))
    lhs = _evaluate(node[1], x)
    rhs = _evaluate(node[2], x)
    if op == "+":
        return lhs + rhs
    if op == "-":
        return lhs - rhs
    if op == "*":
        return lhs * rhs
    if op == "/":
        with np.errstate(divide="ignore", invalid="ignore"):
            return lhs / rhs
    if op == "^":
        return _power(lhs, rhs)
    raise ExpressionError(f"unknown operator {op!r}")


class Expression:
    """A compiled expression in the variable x, callable on scalars or arrays."""

    def __init__(self, text: str):
        self.text = text
        self._ast = _Parser(_tokenize(text)).parse()

    def __call__(self, x):
        xs = np.asarray(x, dtype=float)
        out = _evaluate(self._ast, np.atleast_1d(xs))
        return float(out[0]) if xs.ndim == 0 else out

    def __repr__(self):
        return f"Expression({self.text!r})"


def parse_expression(text: str) -> Expression:
    return Expression(text)
