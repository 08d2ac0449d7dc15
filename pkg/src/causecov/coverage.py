"""Mutation coverage, cause states and q-responsibility of Kripke states."""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import ctl, product
from .circuit.resp import BelowThreshold, RespResult, resp_bounded, resp_brute
from .errors import SpecNotSatisfiedError, UnknownVariableError, UnsupportedOperatorError
from .kripke import KripkeStructure, mutate, natural_key

DIRECT, CIRCUIT = "direct", "circuit"


def parse_engine(engine) -> tuple[str, int | None]:
    """Normalise ``"direct"``, ``"circuit"`` or ``"bounded:k"`` into ``(name, k)``."""
    if isinstance(engine, tuple):
        return engine
    if engine in (DIRECT, CIRCUIT):
        return engine, None
    if isinstance(engine, str) and engine.startswith("bounded:"):
        try:
            k = int(engine.split(":", 1)[1])
        except ValueError:
            k = 0
        if k < 1:
            raise ValueError(f"bounded engine needs a positive integer bound, got {engine!r}")
        return "bounded", k
    raise ValueError(f"unknown engine {engine!r}; expected direct, circuit or bounded:k")


def _formula(phi) -> ctl.Formula:
    return ctl.parse(phi) if isinstance(phi, str) else phi


def _require_satisfied(K: KripkeStructure, phi: ctl.Formula, q: str | None = None) -> None:
    if q is not None and q not in K.atoms:
        raise UnknownVariableError(f"unknown proposition {q!r}")
    if not ctl.satisfies(K, phi):
        raise SpecNotSatisfiedError(f"{ctl.to_string(phi)} does not hold in the initial state")


def covered_states(K: KripkeStructure, phi, q: str) -> frozenset[str]:
    """States whose single ``q``-flip falsifies ``phi``."""
    phi = _formula(phi)
    _require_satisfied(K, phi, q)
    return frozenset(w for w in K.states if not ctl.satisfies(mutate(K, {w}, q), phi))


def is_cause_state(K: KripkeStructure, phi, q: str, w: str) -> bool:
    """Some set ``Y`` of other states keeps ``phi`` under the ``q``-flip while ``Y + {w}`` breaks it."""
    return q_responsibility(K, phi, q, w, DIRECT).is_cause


def _direct(K: KripkeStructure, phi, q, w):
    others = [s for s in K.sorted_states() if s != w]
    for size in range(len(others) + 1):
        for Z in itertools.combinations(others, size):
            mutant = mutate(K, Z, q)
            if ctl.satisfies(mutant, phi) and not ctl.satisfies(mutate(mutant, {w}, q), phi):
                return frozenset(Z)
    return None


class _CircuitEngine:
    """Compiled product circuit shared by every state of one query."""

    def __init__(self, K, phi, q):
        self.pc = product.compile(K, phi)
        self.f = self.pc.assignment(K)
        self.q = q
        self.mutable = [
            name for (state, prop), name in self.pc.leaf_map.items() if prop == q
        ]

    def resp(self, w, k=None):
        if (w, self.q) not in self.pc.leaf_map:
            # q does not occur in the formula: flipping it never matters
            return RespResult()
        X = self.pc.variable(w, self.q)
        if k is None:
            res = resp_brute(self.pc.circuit, X, None, self.f, self.mutable)
        else:
            res = resp_bounded(self.pc.circuit, X, self.f, self.mutable, k)
        if isinstance(res, BelowThreshold) or res.witness is None:
            return res
        return RespResult.of(self.pc.pair(name)[0] for name in res.witness)


def q_responsibility(K: KripkeStructure, phi, q: str, w: str, engine="direct"):
    """Degree of ``q``-responsibility of state ``w`` for ``phi``.

    Engines: ``"direct"`` enumerates sets of states and model checks each
    mutant; ``"circuit"`` runs the circuit search on the compiled product
    with only the ``q`` leaves mutable; ``"bounded:k"`` runs the circuit
    search up to contingencies of size ``k-1`` and returns
    :class:`BelowThreshold` past that. The witness is a set of state ids.
    """
    phi = _formula(phi)
    name, k = parse_engine(engine)
    _require_satisfied(K, phi, q)
    if w not in K.states:
        raise UnknownVariableError(f"unknown state {w!r}")
    if name == DIRECT:
        return RespResult.of(_direct(K, phi, q, w))
    return _CircuitEngine(K, phi, q).resp(w, k)


# --- syntax-sensitive coverage --------------------------------------------------


def fresh_name(q: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    name = q + "'"
    while name in taken:
        name += "'"
    return name


def trans_q(phi, q: str, fresh: str | None = None) -> tuple[ctl.Formula, str]:
    """Rewrite ``phi`` so that eventualities record where ``q`` first fulfils them.

    Defined on literals, constants, ``&``, ``AX``, ``AF``, ``AG`` and
    ``A[. U .]``; anything else raises :class:`UnsupportedOperatorError`.
    Returns the transformed formula and the fresh proposition it introduces.
    """
    phi = _formula(phi)
    if fresh is None:
        fresh = fresh_name(q, ctl.atoms(phi))

    def tr(f):
        if isinstance(f, ctl.Const):
            return f
        if isinstance(f, ctl.Atom):
            return ctl.Atom(fresh) if f.name == q else f
        if isinstance(f, ctl.Unary):
            if f.op == "!" and isinstance(f.arg, ctl.Atom):
                return ctl.Not(tr(f.arg))
            if f.op == "AX":
                return ctl.AX(tr(f.arg))
            if f.op == "AF":
                return tr(ctl.AU(ctl.TRUE, f.arg))
            if f.op == "AG":
                return ctl.AR(ctl.FALSE, tr(f.arg))
        elif f.op == "&":
            return ctl.And(tr(f.left), tr(f.right))
        elif f.op == "AU":
            left, right = f.left, f.right
            not_right = ctl.to_pnf(ctl.Not(right))
            return ctl.And(
                ctl.AU(tr(left), right),
                ctl.AU(_conj(left, not_right), tr(right)),
            )
        raise UnsupportedOperatorError(
            f"trans_q is not defined for {ctl.to_string(f)!r} (supported: literals, &, AX, AF, AG, A[. U .])"
        )

    return tr(phi), fresh


def _conj(a, b):
    if a == ctl.TRUE:
        return b
    return ctl.And(a, b)


def covered_prime_states(K: KripkeStructure, phi, q: str) -> frozenset[str]:
    """States that are ``q``-covered' : flipping the copy ``q'`` breaks ``trans_q(phi)``."""
    phi = _formula(phi)
    _require_satisfied(K, phi, q)
    transformed, fresh = trans_q(phi, q, fresh_name(q, K.atoms | ctl.atoms(phi)))
    labels = {s: K.labels[s] | ({fresh} if q in K.labels[s] else set()) for s in K.states}
    K2 = K.with_atoms(K.atoms | {fresh}, labels)
    if not ctl.satisfies(K2, transformed):
        raise SpecNotSatisfiedError("transformed specification does not hold")
    return frozenset(w for w in K.states if not ctl.satisfies(mutate(K2, {w}, fresh), transformed))


# --- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class StateRecord:
    state: str
    covered: bool
    cause: bool | None
    responsibility: RespResult | BelowThreshold

    def as_dict(self):
        resp = self.responsibility
        out = {
            "state": self.state,
            "covered": self.covered,
            "cause": self.cause,
            "dr": str(resp),
        }
        if isinstance(resp, RespResult):
            out["witness"] = None if resp.witness is None else sorted(resp.witness, key=natural_key)
        return out


@dataclass(frozen=True)
class CoverageReport:
    spec: str
    proposition: str
    engine: str
    records: tuple[StateRecord, ...] = field(default_factory=tuple)

    def covered(self) -> frozenset[str]:
        return frozenset(r.state for r in self.records if r.covered)

    def causes(self) -> frozenset[str]:
        return frozenset(r.state for r in self.records if r.cause)

    def dr(self, state: str) -> Fraction | BelowThreshold:
        for r in self.records:
            if r.state == state:
                resp = r.responsibility
                return resp.dr if isinstance(resp, RespResult) else resp
        raise UnknownVariableError(f"unknown state {state!r}")

    def as_dict(self):
        return {
            "spec": self.spec,
            "proposition": self.proposition,
            "engine": self.engine,
            "states": [r.as_dict() for r in self.records],
        }


def _record(state, resp) -> StateRecord:
    if isinstance(resp, BelowThreshold):
        return StateRecord(state, False, None, resp)
    return StateRecord(state, resp.dr == 1, resp.dr > 0, resp)


def coverage_report(
    K: KripkeStructure, phi, q: str, engine="circuit", jobs: int = 1
) -> CoverageReport:
    """Responsibility record for every state, sorted by state id.

    ``jobs > 1`` fans the per-state searches out over a thread pool; results
    are collected in state order, so the report does not depend on ``jobs``.
    """
    phi = _formula(phi)
    name, k = parse_engine(engine)
    _require_satisfied(K, phi, q)
    states = K.sorted_states()
    if name == DIRECT:
        def one(w):
            return RespResult.of(_direct(K, phi, q, w))
    else:
        shared = _CircuitEngine(K, phi, q)

        def one(w):
            return shared.resp(w, k)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(one, states))
    else:
        results = [one(w) for w in states]
    label = name if k is None else f"{name}:{k}"
    return CoverageReport(
        ctl.to_string(phi), q, label, tuple(_record(w, r) for w, r in zip(states, results))
    )
