"""Finite Kripke structures and proposition-flipping mutants."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Mapping

from .errors import KripkeError, UnknownVariableError


def natural_key(name: str):
    """Sort key that orders ``w2`` before ``w10``."""
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.findall(r"\d+|\D+", name)]


@dataclass(frozen=True)
class KripkeStructure:
    """States with labels over ``atoms``, one initial state and a total transition relation."""

    states: tuple[str, ...]
    initial: str
    transitions: frozenset[tuple[str, str]]
    labels: Mapping[str, frozenset[str]]
    atoms: frozenset[str]

    def __post_init__(self):
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))
        labels = {s: frozenset(self.labels.get(s, ())) for s in states}
        object.__setattr__(self, "labels", labels)

        if len(set(states)) != len(states):
            dup = sorted({s for s in states if states.count(s) > 1})
            raise KripkeError(f"duplicate state id(s) {dup}")
        if not states:
            raise KripkeError("structure has no states")
        known = set(states)
        if self.initial not in known:
            raise KripkeError(f"initial state {self.initial!r} is not a state")
        for src, dst in self.transitions:
            if src not in known or dst not in known:
                raise KripkeError(f"dangling transition {src!r} -> {dst!r}")
        for s, lab in labels.items():
            extra = lab - self.atoms
            if extra:
                raise KripkeError(f"state {s!r} is labelled with unknown proposition(s) {sorted(extra)}")
        succ: dict[str, list[str]] = {s: [] for s in states}
        for src, dst in self.transitions:
            succ[src].append(dst)
        dead = [s for s in states if not succ[s]]
        if dead:
            raise KripkeError(f"transition relation is not total: no successor for {dead}")
        object.__setattr__(
            self, "_succ", {s: tuple(sorted(v, key=natural_key)) for s, v in succ.items()}
        )

    def successors(self, state: str) -> tuple[str, ...]:
        """Successors of ``state``, sorted by state id."""
        return self._succ[state]

    def sorted_states(self) -> list[str]:
        return sorted(self.states, key=natural_key)

    def __hash__(self):
        return hash((self.states, self.initial, self.transitions, self.atoms))

    def __eq__(self, other):
        if not isinstance(other, KripkeStructure):
            return NotImplemented
        return (
            set(self.states) == set(other.states)
            and self.initial == other.initial
            and self.transitions == other.transitions
            and dict(self.labels) == dict(other.labels)
            and self.atoms == other.atoms
        )

    def with_atoms(self, atoms: Iterable[str], labels: Mapping[str, Iterable[str]]):
        """Copy with an enlarged proposition universe and replaced labels."""
        return KripkeStructure(
            self.states,
            self.initial,
            self.transitions,
            {s: frozenset(labels.get(s, ())) for s in self.states},
            frozenset(atoms),
        )


def mutate(K: KripkeStructure, Z: Iterable[str], q: str) -> KripkeStructure:
    """Flip proposition ``q`` in every state of ``Z``."""
    Z = set(Z)
    unknown = Z.difference(K.states)
    if unknown:
        raise UnknownVariableError(f"unknown state(s) {sorted(unknown)}")
    if q not in K.atoms:
        raise UnknownVariableError(f"unknown proposition {q!r}")
    labels = {s: (lab ^ {q}) if s in Z else lab for s, lab in K.labels.items()}
    return KripkeStructure(K.states, K.initial, K.transitions, labels, K.atoms)


def to_dict(K: KripkeStructure) -> dict[str, Any]:
    return {
        "atoms": sorted(K.atoms),
        "states": [{"id": s, "labels": sorted(K.labels[s])} for s in K.states],
        "initial": K.initial,
        "transitions": [
            [src, dst]
            for src, dst in sorted(K.transitions, key=lambda t: (natural_key(t[0]), natural_key(t[1])))
        ],
    }


def from_dict(doc: Any) -> KripkeStructure:
    if not isinstance(doc, dict):
        raise KripkeError("structure document must be an object")
    for key in ("atoms", "states", "initial", "transitions"):
        if key not in doc:
            raise KripkeError(f"structure document lacks {key!r}")
    states, labels = [], {}
    for entry in doc["states"]:
        if isinstance(entry, str):
            entry = {"id": entry}
        if not isinstance(entry, dict) or "id" not in entry:
            raise KripkeError(f"malformed state entry {entry!r}")
        sid = str(entry["id"])
        states.append(sid)
        if sid in labels:
            raise KripkeError(f"duplicate state id {sid!r}")
        labels[sid] = frozenset(entry.get("labels", ()))
    transitions = set()
    for t in doc["transitions"]:
        if not isinstance(t, (list, tuple)) or len(t) != 2:
            raise KripkeError(f"malformed transition {t!r}")
        transitions.add((str(t[0]), str(t[1])))
    return KripkeStructure(tuple(states), str(doc["initial"]), frozenset(transitions), labels, frozenset(doc["atoms"]))


def dumps(K: KripkeStructure) -> str:
    return json.dumps(to_dict(K), indent=2) + "\n"


def loads(text: str) -> KripkeStructure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise KripkeError(f"invalid JSON ({exc})") from exc
    return from_dict(doc)


def load(path) -> KripkeStructure:
    return loads(Path(path).read_text())
