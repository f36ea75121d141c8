"""
Generating-function expression language.

Grammar (whitespace is insignificant, implicit multiplication is rejected)::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := ('+' | '-') factor | atom ('^' exponent)?
    exponent := integer | '(' signed-rational ')'
    atom     := integer | 'x' | '(' expr ')'
              | ('sqrt' | 'exp' | 'log') '(' expr ')'
              | 'root' '(' expr ',' signed-rational ')'

``root(e, r)`` is ``e^(1/r)``.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

__all__ = [
    "Node", "Num", "Var", "Neg", "Add", "Sub", "Mul", "Div", "Pow",
    "Sqrt", "Exp", "Log", "Root", "parse_expression", "to_text",
]


class Node:
    """Base class of expression nodes."""


@dataclass(frozen=True)
class Num(Node):
    value: Fraction


@dataclass(frozen=True)
class Var(Node):
    pass


@dataclass(frozen=True)
class Neg(Node):
    arg: Node


@dataclass(frozen=True)
class Add(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Sub(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Mul(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Div(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: Fraction


@dataclass(frozen=True)
class Sqrt(Node):
    arg: Node


@dataclass(frozen=True)
class Exp(Node):
    arg: Node


@dataclass(frozen=True)
class Log(Node):
    arg: Node


@dataclass(frozen=True)
class Root(Node):
    arg: Node
    r: Fraction


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_FUNCS = {"sqrt": Sqrt, "exp": Exp, "log": Log}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:  # only trailing whitespace left
                break
            if m.group(1) is not None:
                self.tokens.append(("num", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("id", m.group(2), m.start(2)))
            elif m.group(3) is not None:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val, off = self.take()
        if kind != "op" or val != op:
            shown = val or "end of input"
            raise ParseError(f"expected {op!r}, found {shown!r}", off)

    def at_op(self, *ops):
        kind, val, _ = self.peek()
        return kind == "op" and val in ops

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression", 0)
        node = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            if kind in ("num", "id") or val == "(":
                raise ParseError("implicit multiplication is not supported", off)
            raise ParseError(f"unexpected {val!r}", off)
        return node

    def expr(self):
        node = self.term()
        while self.at_op("+", "-"):
            _, op, _ = self.take()
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.at_op("*", "/"):
            _, op, _ = self.take()
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self):
        if self.at_op("-"):
            self.take()
            return Neg(self.factor())
        if self.at_op("+"):
            self.take()
            return self.factor()
        node = self.atom()
        if self.at_op("^"):
            self.take()
            node = Pow(node, self.exponent())
        return node

    def signed_rational(self):
        sign = 1
        if self.at_op("-", "+"):
            _, op, _ = self.take()
            sign = -1 if op == "-" else 1
        kind, val, off = self.take()
        if kind != "num":
            raise ParseError("malformed rational exponent", off)
        value = Fraction(int(val))
        if self.at_op("/"):
            self.take()
            kind, val, off = self.take()
            if kind != "num" or int(val) == 0:
                raise ParseError("malformed rational exponent", off)
            value /= int(val)
        return sign * value

    def exponent(self):
        kind, val, off = self.peek()
        if kind == "op" and val == "(":
            self.take()
            value = self.signed_rational()
            self.expect(")")
            return value
        if kind == "num" or (kind == "op" and val in "+-"):
            sign = 1
            if kind == "op":
                self.take()
                sign = -1 if val == "-" else 1
            kind, val, off = self.take()
            if kind != "num":
                raise ParseError("malformed rational exponent", off)
            return Fraction(sign * int(val))
        raise ParseError("malformed rational exponent", off)

    def atom(self):
        kind, val, off = self.take()
        if kind == "num":
            return Num(Fraction(int(val)))
        if kind == "id":
            if val == "x":
                return Var()
            if val in _FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return _FUNCS[val](arg)
            if val == "root":
                self.expect("(")
                arg = self.expr()
                self.expect(",")
                r = self.signed_rational()
                if r == 0:
                    raise ParseError("root index must be nonzero", off)
                self.expect(")")
                return Root(arg, r)
            raise ParseError(f"unknown identifier {val!r}", off)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {val or 'end of input'!r}", off)


def parse_expression(text):
    """Parse ``text`` into an expression tree."""
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    try:
        return _Parser(text).parse()
    except ParseError as exc:
        # report byte offsets, not character offsets
        if exc.offset is not None and not text.isascii():
            msg = str(exc).rsplit(" (at offset", 1)[0]
            raise ParseError(msg, len(text[: exc.offset].encode())) from None
        raise


def _rat_text(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_text(node):
    """Render a tree so that :func:`parse_expression` rebuilds it exactly."""
    if isinstance(node, Num):
        if node.value.denominator == 1 and node.value >= 0:
            return str(node.value.numerator)
        return f"({_rat_text(node.value)})"
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Neg):
        return f"(-{to_text(node.arg)})"
    for cls, op in ((Add, "+"), (Sub, "-"), (Mul, "*"), (Div, "/")):
        if isinstance(node, cls):
            return f"({to_text(node.left)} {op} {to_text(node.right)})"
    if isinstance(node, Pow):
        e = node.exponent
        base = to_text(node.base)
        if isinstance(node.base, Pow):
            base = f"({base})"
        if e.denominator == 1 and e >= 0:
            return f"{base}^{e.numerator}"
        return f"{base}^({_rat_text(e)})"
    if isinstance(node, Sqrt):
        return f"sqrt({to_text(node.arg)})"
    if isinstance(node, Exp):
        return f"exp({to_text(node.arg)})"
    if isinstance(node, Log):
        return f"log({to_text(node.arg)})"
    if isinstance(node, Root):
        return f"root({to_text(node.arg)}, {_rat_text(node.r)})"
    raise TypeError(f"not an expression node: {node!r}")
