"""Boolean circuits: immutable gate graphs with one output gate."""
from __future__ import annotations

import graphlib
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .. import boolexpr
from ..errors import (
    CircuitError,
    CyclicCircuitError,
    MissingVariableError,
    UnknownVariableError,
)

INPUT, NOT, AND, OR, CONST0, CONST1 = "input", "not", "and", "or", "const0", "const1"
KINDS = (INPUT, NOT, AND, OR, CONST0, CONST1)
ARITY = {INPUT: 0, NOT: 1, AND: 2, OR: 2, CONST0: 0, CONST1: 0}

# opcodes of the compiled program
_OP = {INPUT: 0, NOT: 1, AND: 2, OR: 3, CONST0: 4, CONST1: 5}

Assignment = Mapping[str, int]


@dataclass(frozen=True)
class Gate:
    kind: str
    args: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        if len(self.args) != ARITY[self.kind]:
            raise CircuitError(
                f"{self.kind} gate takes {ARITY[self.kind]} argument(s), got {len(self.args)}"
            )


class Circuit:
    """An acyclic circuit of input/NOT/AND/OR/constant gates.

    Input gates are identified by their variable name. ``inputs`` fixes the
    variable order; gates not reachable from ``output`` (other than inputs)
    are dropped at construction.
    """

    def __init__(
        self,
        gates: Mapping[str, Gate],
        output: str,
        inputs: Iterable[str] | None = None,
    ):
        gates = dict(gates)
        if output not in gates:
            raise CircuitError(f"output {output!r} is not a gate")
        declared = [g for g, gate in gates.items() if gate.kind == INPUT]
        if inputs is None:
            inputs = declared
        inputs = tuple(inputs)
        if len(set(inputs)) != len(inputs):
            raise CircuitError("duplicate input variable")
        if set(inputs) != set(declared):
            raise CircuitError("inputs must name exactly the input gates")
        for gid, gate in gates.items():
            for a in gate.args:
                if a not in gates:
                    raise CircuitError(f"gate {gid!r} refers to unknown gate {a!r}")

        reachable = set()
        stack = [output]
        while stack:
            g = stack.pop()
            if g in reachable:
                continue
            reachable.add(g)
            stack.extend(gates[g].args)
        kept = {g: gate for g, gate in gates.items() if g in reachable or gate.kind == INPUT}

        sorter = graphlib.TopologicalSorter({g: gate.args for g, gate in kept.items()})
        try:
            order = list(sorter.static_order())
        except graphlib.CycleError as exc:
            raise CyclicCircuitError(f"circuit has a cycle through {exc.args[1]}") from None
        # inputs first, in declared order, so program slots line up with variables
        input_set = set(inputs)
        order = list(inputs) + [g for g in order if g not in input_set]

        self._gates = MappingProxyType(kept)
        self.output = output
        self.inputs = inputs
        self.order = tuple(order)
        self.index = MappingProxyType({g: i for i, g in enumerate(order)})
        self._program = tuple(
            (_OP[kept[g].kind], *(self.index[a] for a in kept[g].args)) for g in order
        )

    @property
    def gates(self) -> Mapping[str, Gate]:
        return self._gates

    def __len__(self):
        return len(self._gates)

    def __contains__(self, gate_id):
        return gate_id in self._gates

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return (
            self.output == other.output
            and self.inputs == other.inputs
            and dict(self._gates) == dict(other._gates)
        )

    def __hash__(self):
        return hash((self.output, self.inputs, len(self._gates)))

    def __repr__(self):
        return f"Circuit({len(self.inputs)} inputs, {len(self._gates)} gates, output={self.output!r})"

    @property
    def is_monotone(self) -> bool:
        return all(g.kind != NOT for g in self._gates.values())

    def cone(self, gate: str) -> frozenset[str]:
        """Gates (including inputs) that ``gate`` depends on, itself included."""
        self.check_gate(gate)
        seen = set()
        stack = [gate]
        while stack:
            g = stack.pop()
            if g not in seen:
                seen.add(g)
                stack.extend(self._gates[g].args)
        return frozenset(seen)

    def check_gate(self, gate: str) -> None:
        if gate not in self._gates:
            raise UnknownVariableError(f"unknown gate {gate!r}")

    def check_variable(self, name: str) -> None:
        if name not in self._gates or self._gates[name].kind != INPUT:
            raise UnknownVariableError(f"unknown input variable {name!r}")

    def input_vector(self, f: Assignment) -> list[int]:
        """Input values of ``f`` in ``self.inputs`` order; validates totality."""
        try:
            return [1 if f[x] else 0 for x in self.inputs]
        except KeyError as exc:
            raise MissingVariableError(f"assignment has no value for {exc.args[0]!r}") from None

    def run(self, inputs: list[int]) -> list[int]:
        """Evaluate the compiled program on an input vector; one bit per gate slot."""
        vals = list(inputs) + [0] * (len(self.order) - len(inputs))
        for i in range(len(inputs), len(vals)):
            ins = self._program[i]
            op = ins[0]
            if op == 2:
                vals[i] = vals[ins[1]] & vals[ins[2]]
            elif op == 3:
                vals[i] = vals[ins[1]] | vals[ins[2]]
            elif op == 1:
                vals[i] = 1 - vals[ins[1]]
            else:
                vals[i] = 1 if op == 5 else 0
        return vals

    @classmethod
    def from_formula(cls, text: str, inputs: Iterable[str] | None = None) -> "Circuit":
        """Build a circuit mirroring the parse tree of a propositional formula.

        Repeated occurrences of a variable share one input gate; every
        connective occurrence becomes its own gate, so the structure follows
        the parenthesisation exactly.
        """
        expr = boolexpr.parse_expr(text)
        b = CircuitBuilder(share=False)
        names = sorted(expr.variables()) if inputs is None else list(inputs)
        for name in names:
            b.var(name)

        def build(e):
            if isinstance(e, boolexpr.Var):
                return b.var(e.name)
            if isinstance(e, boolexpr.Const):
                return b.const(e.value)
            if isinstance(e, boolexpr.Not):
                return b.neg(build(e.arg))
            if isinstance(e, boolexpr.And):
                return b.and_(build(e.left), build(e.right))
            return b.or_(build(e.left), build(e.right))

        return b.build(build(expr))


def evaluate(circuit: Circuit, f: Assignment) -> dict[str, int]:
    """Value of every gate under the total input assignment ``f``."""
    vals = circuit.run(circuit.input_vector(f))
    return dict(zip(circuit.order, vals))


def flip(f: Assignment, Z: Iterable[str]) -> dict[str, int]:
    """The assignment that differs from ``f`` exactly on the variables in ``Z``."""
    Z = set(Z)
    unknown = Z.difference(f)
    if unknown:
        raise UnknownVariableError(f"cannot flip unknown variable(s) {sorted(unknown)}")
    return {x: (1 - int(v)) if x in Z else int(v) for x, v in f.items()}


class CircuitBuilder:
    """Incremental construction of circuits with optional sharing and folding.

    With ``share=True`` structurally identical gates are built once and
    constant inputs are folded away (``x & 1 = x``, ``x | 1 = 1`` ...).
    Generated gate ids are ``g0, g1, ...`` in creation order, so the result
    is deterministic for a deterministic call sequence.
    """

    def __init__(self, share: bool = True, prefix: str = "g"):
        self.share = share
        self.prefix = prefix
        self.gates: dict[str, Gate] = {}
        self.inputs: list[str] = []
        self._memo: dict[tuple, str] = {}
        self._consts: dict[bool, str] = {}

    def _fresh(self, gate: Gate) -> str:
        key = (gate.kind, gate.args)
        if self.share and key in self._memo:
            return self._memo[key]
        gid = f"{self.prefix}{len(self.gates) - len(self.inputs)}"
        while gid in self.gates:
            gid = "_" + gid
        self.gates[gid] = gate
        if self.share:
            self._memo[key] = gid
        return gid

    def var(self, name: str) -> str:
        if name in self.gates:
            if self.gates[name].kind != INPUT:
                raise CircuitError(f"{name!r} is already a non-input gate")
            return name
        self.gates[name] = Gate(INPUT)
        self.inputs.append(name)
        return name

    def const(self, value: bool) -> str:
        value = bool(value)
        if value not in self._consts or not self.share:
            self._consts[value] = self._fresh(Gate(CONST1 if value else CONST0))
        return self._consts[value]

    def _const_value(self, g: str):
        kind = self.gates[g].kind
        if kind == CONST1:
            return True
        if kind == CONST0:
            return False
        return None

    def neg(self, a: str) -> str:
        if self.share:
            c = self._const_value(a)
            if c is not None:
                return self.const(not c)
        return self._fresh(Gate(NOT, (a,)))

    def and_(self, a: str, b: str) -> str:
        if self.share:
            ca, cb = self._const_value(a), self._const_value(b)
            if ca is False or cb is False:
                return self.const(False)
            if ca is True:
                return b
            if cb is True or a == b:
                return a
        return self._fresh(Gate(AND, (a, b)))

    def or_(self, a: str, b: str) -> str:
        if self.share:
            ca, cb = self._const_value(a), self._const_value(b)
            if ca is True or cb is True:
                return self.const(True)
            if ca is False:
                return b
            if cb is False or a == b:
                return a
        return self._fresh(Gate(OR, (a, b)))

    def big_and(self, items: list[str]) -> str:
        return self._balanced(items, self.and_, True)

    def big_or(self, items: list[str]) -> str:
        return self._balanced(items, self.or_, False)

    def _balanced(self, items, op, empty):
        if not items:
            return self.const(empty)
        if len(items) == 1:
            return items[0]
        mid = (len(items) + 1) // 2
        return op(self._balanced(items[:mid], op, empty), self._balanced(items[mid:], op, empty))

    def build(self, output: str) -> Circuit:
        return Circuit(self.gates, output, self.inputs)
