"""Propositional expressions over named variables.

Grammar (loosest binding first)::

    expr    := or ('->' expr)?
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '!' unary | '(' expr ')' | '0' | '1' | 'true' | 'false'
             | NAME ('=' ('0'|'1'))?

``NAME = 0`` is sugar for ``!NAME`` and ``NAME = 1`` for ``NAME``, so causal
formulas can be written as Boolean combinations of primitive events.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .errors import ParseError, UnknownVariableError


class Expr:
    __slots__ = ()

    def variables(self) -> frozenset[str]:
        raise NotImplementedError

    def evaluate(self, env: Mapping[str, int]) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class Const(Expr):
    value: bool

    def variables(self):
        return frozenset()

    def evaluate(self, env):
        return int(self.value)

    def __str__(self):
        return "1" if self.value else "0"


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def variables(self):
        return frozenset((self.name,))

    def evaluate(self, env):
        try:
            return int(env[self.name])
        except KeyError:
            raise UnknownVariableError(f"no value for variable {self.name!r}") from None

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not(Expr):
    arg: Expr

    def variables(self):
        return self.arg.variables()

    def evaluate(self, env):
        return 1 - self.arg.evaluate(env)

    def __str__(self):
        return f"!{self.arg}"


@dataclass(frozen=True)
class And(Expr):
    left: Expr
    right: Expr

    def variables(self):
        return self.left.variables() | self.right.variables()

    def evaluate(self, env):
        return self.left.evaluate(env) & self.right.evaluate(env)

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(Expr):
    left: Expr
    right: Expr

    def variables(self):
        return self.left.variables() | self.right.variables()

    def evaluate(self, env):
        return self.left.evaluate(env) | self.right.evaluate(env)

    def __str__(self):
        return f"({self.left} | {self.right})"


_TOKEN = re.compile(r"\s*(?:(->)|([!&|()=])|([A-Za-z_][A-Za-z0-9_.@']*)|([01]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1) or m.group(2):
            tokens.append(("op", m.group(m.lastindex), start))
        elif m.group(3):
            tokens.append(("name", m.group(3), start))
        else:
            tokens.append(("bit", m.group(4), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", self.text, pos)

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", self.text, pos)
        return e

    def expr(self) -> Expr:
        left = self.disj()
        if self.peek()[1] == "->":
            self.take()
            return Or(Not(left), self.expr())
        return left

    def disj(self) -> Expr:
        e = self.conj()
        while self.peek()[1] == "|":
            self.take()
            e = Or(e, self.conj())
        return e

    def conj(self) -> Expr:
        e = self.unary()
        while self.peek()[1] == "&":
            self.take()
            e = And(e, self.unary())
        return e

    def unary(self) -> Expr:
        kind, val, pos = self.take()
        if kind == "op" and val == "!":
            return Not(self.unary())
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "bit":
            return Const(val == "1")
        if kind == "name":
            if val in ("true", "false"):
                return Const(val == "true")
            if self.peek()[1] == "=":
                self.take()
                bkind, bit, bpos = self.take()
                if bkind != "bit":
                    raise ParseError("expected 0 or 1 after '='", self.text, bpos)
                return Var(val) if bit == "1" else Not(Var(val))
            return Var(val)
        raise ParseError(f"unexpected token {val or 'end of input'!r}", self.text, pos)


def parse_expr(text: str) -> Expr:
    """Parse a propositional expression; raises :class:`ParseError`."""
    return _Parser(text).parse()
