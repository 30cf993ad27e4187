"""Parser and evaluator for scalar fields phi(u, v).

Grammar (one-token lookahead, no implicit multiplication)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ("^" unary)?          # right-associative
    primary := NUMBER | "u" | "v" | "pi" | "e"
             | FUNC "(" expr ")" | "(" expr ")"
    FUNC    := sin | cos | sinh | cosh | exp | ln | sqrt

``^`` binds tighter than unary minus, so ``-u^2`` is ``-(u^2)`` and
``u^2^3`` is ``u^(2^3)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from . import jets
from .errors import DivisionNearZero, DomainError, ExpressionSyntaxError, UnknownIdentifier
from .jets import Jet

FUNCTIONS = {
    "sin": jets.sin,
    "cos": jets.cos,
    "sinh": jets.sinh,
    "cosh": jets.cosh,
    "exp": jets.exp,
    "ln": jets.log,
    "sqrt": jets.sqrt,
}
CONSTANTS = {"pi": math.pi, "e": math.e}
VARIABLES = ("u", "v")


class Expr:
    """Base class of AST nodes.  Calling a node evaluates it."""

    def __call__(self, u, v):
        return _evaluate(self, u, v)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Num(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Const(Expr):
    name: str


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call(Expr):
    fn: str
    arg: Expr


_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ExpressionSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, off = self.take()
        if text != value or kind != "op":
            found = "end of input" if kind == "end" else repr(text)
            raise ExpressionSyntaxError(f"expected {value!r}, found {found}", off)

    def parse(self):
        node = self.expr()
        kind, text, off = self.peek()
        if kind != "end":
            raise ExpressionSyntaxError(f"unexpected {text!r}", off)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.primary()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            node = BinOp("^", node, self.unary())
        return node

    def primary(self):
        kind, text, off = self.take()
        if kind == "num":
            return Num(float(text))
        if kind == "name":
            if text in VARIABLES:
                return Var(text)
            if text in CONSTANTS:
                return Const(text)
            if text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(text, arg)
            raise UnknownIdentifier(f"unknown identifier {text!r}", off)
        if (kind, text) == ("op", "("):
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise ExpressionSyntaxError(f"expected an operand, found {found}", off)


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree.

    Raises
    ------
    ExpressionSyntaxError
        With ``offset`` pointing at the offending character.
    UnknownIdentifier
        For names other than u, v, pi, e and the supported functions.
    """
    return _Parser(text).parse()


def to_text(node: Expr) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, (Var, Const)):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_text(node.operand)})"
    if isinstance(node, BinOp):
        return f"({to_text(node.left)} {node.op} {to_text(node.right)})"
    if isinstance(node, Call):
        return f"{node.fn}({to_text(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


def _evaluate(node, u, v):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return u if node.name == "u" else v
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Neg):
        return -_evaluate(node.operand, u, v)
    if isinstance(node, Call):
        arg = _evaluate(node.arg, u, v)
        try:
            return FUNCTIONS[node.fn](arg)
        except DomainError as exc:
            raise DomainError(f"{exc} in {to_text(node)}", to_text(node)) from None
    left = _evaluate(node.left, u, v)
    right = _evaluate(node.right, u, v)
    try:
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            if not isinstance(right, Jet) and right == 0:
                raise DivisionNearZero("division by zero")
            return left / right
        if isinstance(left, Jet) or isinstance(right, Jet):
            if not isinstance(left, Jet):
                left = Jet.constant(left, right.base, right.degree)
            return jets.power(left, right)
        return jets.power(left, right)
    except (DomainError, DivisionNearZero) as exc:
        raise DomainError(f"{exc} in {to_text(node)}", to_text(node)) from None


def eval_jet(e: Expr, u: float, v: float, degree: int = jets.DEFAULT_DEGREE) -> Jet:
    """Evaluate ``e`` as a jet of the given degree at ``(u, v)``."""
    U = Jet.variable(u, v, "u", degree)
    V = Jet.variable(u, v, "v", degree)
    out = _evaluate(e, U, V)
    if not isinstance(out, Jet):
        out = Jet.constant(out, (u, v), degree)
    return out


def eval_real(e: Expr, u, v):
    """Plain evaluation over floats or numpy arrays."""
    return _evaluate(e, u, v)
