"""Parser for the ASCII polynomial grammar.

    expr   := sign? term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := rational | var | '(' expr ')'

A leading sign is accepted at the start of an expression so that serialized
negative polynomials parse back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .poly import MPoly


class PolySyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(v[1-4]|[xuT])|([-+*/^()])|([A-Za-z_]\w*))")


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError("unexpected character", text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("var", m.group(2), start))
        elif m.group(3):
            tokens.append((m.group(3), m.group(3), start))
        else:
            raise PolySyntaxError(f"unknown variable {m.group(4)!r}", text, start)
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            expected = "end of input" if kind == "end" else repr(kind)
            raise PolySyntaxError(f"expected {expected}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        negate = False
        if self.peek()[0] in ("+", "-"):
            negate = self.take()[0] == "-"
        node = self.term()
        if negate:
            node = Neg(node)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.take()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        node = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "-":
                raise PolySyntaxError("negative exponent", self.text, tok[2])
            node = Pow(node, self.take("int")[1])
        return node

    def base(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            value = Fraction(tok[1])
            if self.peek()[0] == "/":
                self.take()
                den = self.take("int")
                if den[1] == 0:
                    raise PolySyntaxError("zero denominator", self.text, den[2])
                value = Fraction(tok[1], den[1])
            return Num(value)
        if tok[0] == "var":
            self.take()
            return Var(tok[1])
        if tok[0] == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        raise PolySyntaxError("expected a number, variable or '('", self.text, tok[2])


def parse_expr(text: str):
    """Parse text into a PolyExpr syntax tree."""
    p = _Parser(text)
    node = p.expr()
    p.take("end")
    return node


def to_poly(node) -> MPoly:
    if isinstance(node, Num):
        return MPoly.constant(node.value)
    if isinstance(node, Var):
        return MPoly.var(node.name)
    if isinstance(node, Neg):
        return -to_poly(node.operand)
    if isinstance(node, Pow):
        return to_poly(node.base) ** node.exponent
    if isinstance(node, BinOp):
        left, right = to_poly(node.left), to_poly(node.right)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    raise TypeError(f"not a polynomial expression node: {node!r}")


def parse_poly(text: str) -> MPoly:
    """Parse and expand a polynomial, e.g. parse_poly("(x+1)*(x-1)") == x^2-1."""
    return to_poly(parse_expr(text))

