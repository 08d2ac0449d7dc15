"""Compile a Kripke structure and a CTL formula into one Boolean circuit.

The circuit inputs are the pairs ``(state, proposition)``; its output is the
truth of the formula at the initial state. Least and greatest fixpoints are
unrolled ``|W|`` rounds (``|W|`` = number of states), which reaches the
fixpoint for every labelling of the structure, so the result is acyclic
and computes exactly the model-checking function of the labels.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from . import ctl
from .circuit.core import Circuit, CircuitBuilder
from .errors import UnknownVariableError
from .kripke import KripkeStructure, natural_key


def leaf_name(state: str, prop: str) -> str:
    return f"{prop}@{state}"


@dataclass(frozen=True)
class ProductCircuit:
    circuit: Circuit
    leaf_map: Mapping[tuple[str, str], str]
    root: tuple[str, ctl.Formula]

    @property
    def atoms(self) -> frozenset[str]:
        return frozenset(p for _, p in self.leaf_map)

    def variable(self, state: str, prop: str) -> str:
        try:
            return self.leaf_map[(state, prop)]
        except KeyError:
            raise UnknownVariableError(f"no leaf for ({state!r}, {prop!r})") from None

    def pair(self, name: str) -> tuple[str, str]:
        return self._inverse[name]

    @property
    def _inverse(self):
        return {v: k for k, v in self.leaf_map.items()}

    def assignment(self, K: KripkeStructure) -> dict[str, int]:
        """Leaf values read off the labels of ``K`` (same states as at compile time)."""
        return {
            name: int(prop in K.labels[state]) for (state, prop), name in self.leaf_map.items()
        }


def leaf_assignment(K: KripkeStructure, atoms: Iterable[str] | None = None) -> dict[str, int]:
    """``X_{w,p} = 1`` iff ``p`` labels ``w``, for every state and each of ``atoms``."""
    atoms = sorted(K.atoms if atoms is None else atoms)
    return {
        leaf_name(w, p): int(p in K.labels[w]) for w in K.sorted_states() for p in atoms
    }


class _Compiler:
    def __init__(self, K: KripkeStructure, atoms):
        self.K = K
        self.states = K.sorted_states()
        self.b = CircuitBuilder(share=True)
        self.leaf_map = {}
        for w in self.states:
            for p in atoms:
                name = leaf_name(w, p)
                if name in self.b.gates:
                    raise UnknownVariableError(f"leaf name clash for {name!r}")
                self.leaf_map[(w, p)] = self.b.var(name)
        self.memo: dict[tuple[str, ctl.Formula], str] = {}
        self.fixpoints: dict[ctl.Formula, dict[str, str]] = {}

    def node(self, w: str, f: ctl.Formula) -> str:
        key = (w, f)
        if key in self.memo:
            return self.memo[key]
        b = self.b
        if isinstance(f, ctl.Const):
            g = b.const(f.value)
        elif isinstance(f, ctl.Atom):
            g = self.leaf_map[(w, f.name)]
        elif isinstance(f, ctl.Unary):
            if f.op == "!":
                g = b.neg(self.node(w, f.arg))
            else:
                kids = [self.node(s, f.arg) for s in self.K.successors(w)]
                g = b.big_or(kids) if f.op == "EX" else b.big_and(kids)
        elif f.op == "&":
            g = b.and_(self.node(w, f.left), self.node(w, f.right))
        elif f.op == "|":
            g = b.or_(self.node(w, f.left), self.node(w, f.right))
        else:
            g = self.fixpoint(f)[w]
        self.memo[key] = g
        return g

    def fixpoint(self, f: ctl.Binary) -> dict[str, str]:
        """Gates for ``f`` at every state after ``|W|`` approximation rounds."""
        if f in self.fixpoints:
            return self.fixpoints[f]
        b = self.b
        exists = f.op[0] == "E"
        until = f.op[1] == "U"
        # until: Z_{i+1} = right | (left & succ(Z_i)) from false
        # release: Z_{i+1} = right & (left | succ(Z_i)) from true
        layer = {w: b.const(not until) for w in self.states}
        for _ in range(len(self.states)):
            nxt = {}
            for w in self.states:
                kids = [layer[s] for s in self.K.successors(w)]
                step = b.big_or(kids) if exists else b.big_and(kids)
                left, right = self.node(w, f.left), self.node(w, f.right)
                if until:
                    nxt[w] = b.or_(right, b.and_(left, step))
                else:
                    nxt[w] = b.and_(right, b.or_(left, step))
            layer = nxt
        self.fixpoints[f] = layer
        return layer


def compile(K: KripkeStructure, phi: ctl.Formula | str) -> ProductCircuit:
    """Product circuit of ``K`` and ``phi``; ``phi`` is put in positive normal form first.

    Inputs are ``X_{w,p}`` for every state ``w`` and every proposition ``p``
    of the formula, named ``"p@w"``.
    """
    if isinstance(phi, str):
        phi = ctl.parse(phi)
    unknown = ctl.atoms(phi) - K.atoms
    if unknown:
        raise UnknownVariableError(f"formula mentions unknown proposition(s) {sorted(unknown)}")
    pnf = ctl.to_pnf(phi)
    atoms = sorted(ctl.atoms(pnf))
    comp = _Compiler(K, atoms)
    root = comp.node(K.initial, pnf)
    circuit = comp.b.build(root)
    return ProductCircuit(circuit, MappingProxyType(dict(comp.leaf_map)), (K.initial, pnf))


__all__ = ["ProductCircuit", "compile", "leaf_assignment", "leaf_name", "natural_key"]
