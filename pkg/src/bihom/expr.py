"""Recursive-descent parser for scalar expressions.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := '-' factor | atom ('^' integer)?
    atom     := rational | identifier | '(' expr ')'
    rational := integer ('/' positive-integer)?

A rational literal is lexical: ``4/3`` written without blanks is one token,
so ``x/4/3`` reads as ``x / (4/3)``. Use blanks (``x / 4 / 3``) for chained
division. Negative exponents are lowered to division at parse time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence, Union

from .scalar import Scalar


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at byte offset {offset}")


class UnknownIdentifier(ExprSyntaxError):
    def __init__(self, name: str, offset: int, text: str = ""):
        self.name = name
        ValueError.__init__(self, f"unknown identifier {name!r} at byte offset {offset}")
        self.offset = offset
        self.text = text


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int  # nonnegative after lowering


Node = Union[Num, Var, Neg, BinOp, Pow]


# -- lexer -------------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<rat>\d+/[1-9]\d*(?![\w]))"
    r"|(?P<int>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    data = text.encode("utf-8")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", len(text[:pos].encode()), text)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), len(text[:pos].encode())))
        pos = m.end()
    toks.append(_Tok("end", "", len(data)))
    return toks


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names = set(names)
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        return ExprSyntaxError(msg, tok.offset, self.text)

    def expect_op(self, ch: str):
        t = self.peek()
        if t.kind != "op" or t.text != ch:
            raise self.error(f"expected {ch!r}, found {t.text or 'end of input'!r}")
        self.take()

    def parse(self) -> Node:
        if self.peek().kind == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected token {self.peek().text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        t = self.peek()
        if t.kind == "op" and t.text == "-":
            self.take()
            return Neg(self.factor())
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            sign = 1
            if self.peek().kind == "op" and self.peek().text == "-":
                self.take()
                sign = -1
            et = self.peek()
            if et.kind != "int":
                raise self.error("exponent must be an integer literal")
            self.take()
            k = sign * int(et.text)
            if k < 0:
                return BinOp("/", Num(Fraction(1)), Pow(base, -k))
            return Pow(base, k)
        return base

    def atom(self) -> Node:
        t = self.peek()
        if t.kind == "int":
            self.take()
            return Num(Fraction(int(t.text)))
        if t.kind == "rat":
            self.take()
            p, q = t.text.split("/")
            return Num(Fraction(int(p), int(q)))
        if t.kind == "ident":
            if t.text not in self.names:
                raise UnknownIdentifier(t.text, t.offset, self.text)
            self.take()
            return Var(t.text)
        if t.kind == "op" and t.text == "(":
            self.take()
            node = self.expr()
            self.expect_op(")")
            return node
        raise self.error(f"unexpected {t.text or 'end of input'!r}")


def parse_scalar_expr(text: str, parameters: Sequence[str]) -> Node:
    """Parse ``text`` into an AST; identifiers must be in ``parameters``."""
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 0, text)
    return _Parser(text, parameters).parse()


# -- evaluation and printing -------------------------------------------------


def fold(node: Node, leaf: Callable[[Node], object]):
    """Evaluate an AST bottom-up; ``leaf`` maps Num/Var to values."""
    if isinstance(node, (Num, Var)):
        return leaf(node)
    if isinstance(node, Neg):
        return -fold(node.operand, leaf)
    if isinstance(node, Pow):
        base = fold(node.base, leaf)
        return base ** node.exponent
    a = fold(node.left, leaf)
    b = fold(node.right, leaf)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    return a / b


def to_scalar(node: Node, parameters: Sequence[str]) -> Scalar:
    params = tuple(parameters)

    def leaf(n):
        if isinstance(n, Num):
            return Scalar.of(n.value, params)
        return Scalar.param(n.name, params)

    return fold(node, leaf)


def parse_scalar(text: str, parameters: Sequence[str]) -> Scalar:
    return to_scalar(parse_scalar_expr(text, parameters), parameters)


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def pretty(node: Node) -> str:
    """Print an AST so that parsing the result gives back the same AST."""
    return _pp(node, 0)


def _pp(node: Node, ctx: int) -> str:
    # ctx: 0 top, 1 sum operand, 2 product operand, 3 unary operand, 4 power base
    if isinstance(node, Num):
        v = node.value
        s = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        if v < 0:
            # only reachable for ASTs built by hand
            return f"(0 - {s[1:]})"
        return s
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        s = "-" + _pp(node.operand, 3)
        return f"({s})" if ctx >= 4 else s
    if isinstance(node, Pow):
        s = f"{_pp(node.base, 4)}^{node.exponent}"
        return f"({s})" if ctx >= 4 else s
    prec = _PREC[node.op]
    left = _pp(node.left, prec)
    # right operand of a left-associative operator needs one more level
    right = _pp(node.right, prec + 1)
    s = f"{left} {node.op} {right}"
    return f"({s})" if ctx > prec else s
