"""CTL formulas: syntax tree, parser, printer, positive normal form, model checking.

Concrete syntax::

    formula := or ('->' formula)?                   right associative
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '!' unary | ('EX'|'AX'|'EF'|'AF'|'EG'|'AG') unary
             | ('A'|'E') '[' formula ('U'|'R') formula ']'
             | '(' formula ')' | 'true' | 'false' | ATOM

``&&`` and ``||`` are accepted as aliases. Atoms are identifiers that are not
keywords; a trailing prime is allowed (``q'``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .errors import ParseError, UnknownVariableError
from .kripke import KripkeStructure

UNARY_OPS = ("!", "EX", "AX", "EF", "AF", "EG", "AG")
BINARY_OPS = ("&", "|", "->", "EU", "AU", "ER", "AR")
PROP_BINARY = ("&", "|", "->")
KEYWORDS = frozenset({"true", "false", "A", "E", "U", "R", *UNARY_OPS[1:]})


class Formula:
    __slots__ = ()

    def __str__(self):
        return to_string(self)


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Unary(Formula):
    op: str
    arg: Formula

    def __post_init__(self):
        if self.op not in UNARY_OPS:
            raise ValueError(f"unknown unary operator {self.op!r}")


@dataclass(frozen=True)
class Binary(Formula):
    op: str
    left: Formula
    right: Formula

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown binary operator {self.op!r}")


TRUE, FALSE = Const(True), Const(False)


def Not(f):
    return Unary("!", f)


def And(a, b):
    return Binary("&", a, b)


def Or(a, b):
    return Binary("|", a, b)


def Implies(a, b):
    return Binary("->", a, b)


def EX(f):
    return Unary("EX", f)


def AX(f):
    return Unary("AX", f)


def EF(f):
    return Unary("EF", f)


def AF(f):
    return Unary("AF", f)


def EG(f):
    return Unary("EG", f)


def AG(f):
    return Unary("AG", f)


def EU(a, b):
    return Binary("EU", a, b)


def AU(a, b):
    return Binary("AU", a, b)


def ER(a, b):
    return Binary("ER", a, b)


def AR(a, b):
    return Binary("AR", a, b)


# --- printing -----------------------------------------------------------------


def _operand(f: Formula) -> str:
    s = to_string(f)
    if isinstance(f, Binary) and f.op in PROP_BINARY:
        return f"({s})"
    return s


def to_string(f: Formula) -> str:
    """Render ``f`` so that :func:`parse` gives back the same tree."""
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Unary):
        arg = _operand(f.arg)
        if f.op == "!":
            return f"!{arg}"
        return f"{f.op}{arg}" if arg.startswith("(") else f"{f.op} {arg}"
    if f.op in PROP_BINARY:
        left = _operand(f.left)
        # '->' is right associative; a nested implication on the right needs no parens
        right = to_string(f.right) if f.op == "->" and _is(f.right, "->") else _operand(f.right)
        return f"{left} {f.op} {right}"
    return f"{f.op[0]}[{to_string(f.left)} {f.op[1]} {to_string(f.right)}]"


def _is(f, op):
    return isinstance(f, Binary) and f.op == op


# --- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(->|&&|\|\||[!&|()\[\]])|([A-Za-z_][A-Za-z0-9_.]*'*))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if m is None:
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.group(1):
            op = {"&&": "&", "||": "|"}.get(m.group(1), m.group(1))
            tokens.append(("op", op, m.start(1)))
        else:
            word = m.group(2)
            kind = "kw" if word in KEYWORDS else "atom"
            tokens.append((kind, word, m.start(2)))
        pos = m.end()
    tokens.append(("end", "", end))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok):
        raise ParseError(msg, self.text, tok[2])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            self.fail(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)

    def formula(self):
        left = self.disj()
        if self.peek()[1] == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def disj(self):
        f = self.conj()
        while self.peek()[:2] == ("op", "|"):
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.peek()[:2] == ("op", "&"):
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        tok = self.take()
        kind, val = tok[0], tok[1]
        if kind == "op" and val == "!":
            return Not(self.unary())
        if kind == "op" and val == "(":
            f = self.formula()
            self.expect(")")
            return f
        if kind == "atom":
            return Atom(val)
        if kind == "kw":
            if val in ("true", "false"):
                return Const(val == "true")
            if val in UNARY_OPS:
                return Unary(val, self.unary())
            if val in ("A", "E"):
                self.expect("[")
                left = self.formula()
                optok = self.take()
                if optok[1] not in ("U", "R"):
                    self.fail(f"expected 'U' or 'R', found {optok[1] or 'end of input'!r}", optok)
                right = self.formula()
                self.expect("]")
                return Binary(val + optok[1], left, right)
            self.fail(f"unexpected keyword {val!r}", tok)
        self.fail(f"unexpected {val or 'end of input'!r}", tok)


def parse(text: str) -> Formula:
    """Parse CTL concrete syntax; raises :class:`ParseError` with the offending offset."""
    p = _Parser(text)
    f = p.formula()
    tok = p.peek()
    if tok[0] != "end":
        p.fail(f"unexpected {tok[1]!r}", tok)
    return f


# --- structure ----------------------------------------------------------------


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Unary):
        yield from subformulas(f.arg)
    elif isinstance(f, Binary):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Atom))


def size(f: Formula) -> int:
    """Number of syntax-tree nodes."""
    return sum(1 for _ in subformulas(f))


def depth(f: Formula) -> int:
    if isinstance(f, Unary):
        return 1 + depth(f.arg)
    if isinstance(f, Binary):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


PNF_OPS = frozenset({"&", "|", "EX", "AX", "EU", "AU", "ER", "AR"})


def is_pnf(f: Formula) -> bool:
    for g in subformulas(f):
        if isinstance(g, Unary) and g.op == "!":
            if not isinstance(g.arg, Atom):
                return False
        elif isinstance(g, (Unary, Binary)) and g.op not in PNF_OPS:
            return False
    return True


_DUAL = {"&": "|", "|": "&", "EX": "AX", "AX": "EX"}
# negation of a path-quantified until/release swaps quantifier and operator
_NEG_UR = {"EU": "AR", "AU": "ER", "ER": "AU", "AR": "EU"}


def to_pnf(f: Formula, negate: bool = False) -> Formula:
    """Equivalent formula with negation only on atoms and no ->, F or G."""
    if isinstance(f, Const):
        return Const(f.value != negate)
    if isinstance(f, Atom):
        return Not(f) if negate else f
    if isinstance(f, Unary):
        op = f.op
        if op == "!":
            return to_pnf(f.arg, not negate)
        if op in ("EX", "AX"):
            return Unary(_DUAL[op] if negate else op, to_pnf(f.arg, negate))
        # EF p = E[true U p], AF p = A[true U p], EG p = E[false R p], AG p = A[false R p]
        quant, temporal = op[0], op[1]
        const = TRUE if temporal == "F" else FALSE
        return to_pnf(Binary(quant + ("U" if temporal == "F" else "R"), const, f.arg), negate)
    op = f.op
    if op == "->":
        return to_pnf(Or(Not(f.left), f.right), negate)
    if op in ("&", "|"):
        return Binary(_DUAL[op] if negate else op, to_pnf(f.left, negate), to_pnf(f.right, negate))
    return Binary(_NEG_UR[op] if negate else op, to_pnf(f.left, negate), to_pnf(f.right, negate))


# --- model checking -------------------------------------------------------------


def model_check(K: KripkeStructure, phi: Formula | str) -> frozenset[str]:
    """States of ``K`` satisfying ``phi`` (explicit-state labelling)."""
    if isinstance(phi, str):
        phi = parse(phi)
    unknown = atoms(phi) - K.atoms
    if unknown:
        raise UnknownVariableError(f"formula mentions unknown proposition(s) {sorted(unknown)}")
    return frozenset(_sat(K, phi, {}))


def satisfies(K: KripkeStructure, phi: Formula | str) -> bool:
    return K.initial in model_check(K, phi)


def _pre_exists(K, target):
    return {s for s in K.states if any(t in target for t in K.successors(s))}


def _pre_forall(K, target):
    return {s for s in K.states if all(t in target for t in K.successors(s))}


def _sat(K: KripkeStructure, f: Formula, memo: dict) -> set[str]:
    if f in memo:
        return memo[f]
    everything = set(K.states)
    if isinstance(f, Const):
        res = everything if f.value else set()
    elif isinstance(f, Atom):
        res = {s for s in K.states if f.name in K.labels[s]}
    elif isinstance(f, Unary):
        op = f.op
        if op == "!":
            res = everything - _sat(K, f.arg, memo)
        elif op == "EX":
            res = _pre_exists(K, _sat(K, f.arg, memo))
        elif op == "AX":
            res = _pre_forall(K, _sat(K, f.arg, memo))
        else:
            quant, temporal = op[0], op[1]
            const = TRUE if temporal == "F" else FALSE
            res = _sat(K, Binary(quant + ("U" if temporal == "F" else "R"), const, f.arg), memo)
    else:
        left = _sat(K, f.left, memo)
        right = _sat(K, f.right, memo)
        op = f.op
        if op == "&":
            res = left & right
        elif op == "|":
            res = left | right
        elif op == "->":
            res = (everything - left) | right
        else:
            pre = _pre_exists if op[0] == "E" else _pre_forall
            if op[1] == "U":
                # least fixpoint: right | (left & pre(Z))
                res = set(right)
                while True:
                    grown = res | (left & pre(K, res))
                    if grown == res:
                        break
                    res = grown
            else:
                # greatest fixpoint: right & (left | pre(Z))
                res = set(right)
                while True:
                    shrunk = right & (left | pre(K, res))
                    if shrunk == res:
                        break
                    res = shrunk
    memo[f] = res
    return res
