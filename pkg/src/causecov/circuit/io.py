"""JSON documents for circuits and assignments (see docs/formats.md)."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..errors import CausecovError, FormatError
from .core import INPUT, KINDS, Circuit, Gate


def circuit_to_dict(circuit: Circuit) -> dict[str, Any]:
    gates = []
    for gid in circuit.order:
        gate = circuit.gates[gid]
        gates.append({"id": gid, "kind": gate.kind, "args": list(gate.args)})
    return {"inputs": list(circuit.inputs), "gates": gates, "output": circuit.output}


def circuit_from_dict(doc: Any) -> Circuit:
    if not isinstance(doc, dict):
        raise FormatError("circuit document must be an object")
    for key in ("inputs", "gates", "output"):
        if key not in doc:
            raise FormatError(f"circuit document lacks {key!r}")
    inputs = doc["inputs"]
    if not isinstance(inputs, list) or not all(isinstance(x, str) for x in inputs):
        raise FormatError("'inputs' must be a list of names")
    gates: dict[str, Gate] = {}
    for entry in doc["gates"]:
        if not isinstance(entry, dict) or "id" not in entry or "kind" not in entry:
            raise FormatError(f"malformed gate entry {entry!r}")
        gid, kind, args = entry["id"], entry["kind"], entry.get("args", [])
        if kind not in KINDS:
            raise FormatError(f"gate {gid!r}: unknown kind {kind!r}")
        if gid in gates:
            raise FormatError(f"duplicate gate id {gid!r}")
        try:
            gates[gid] = Gate(kind, tuple(args))
        except CausecovError as exc:
            raise FormatError(f"gate {gid!r}: {exc}") from exc
    for x in inputs:
        if x not in gates:
            gates[x] = Gate(INPUT)
    try:
        return Circuit(gates, doc["output"], inputs)
    except CausecovError as exc:
        raise FormatError(str(exc)) from exc


def dump_circuit(circuit: Circuit) -> str:
    return json.dumps(circuit_to_dict(circuit), indent=2) + "\n"


def _read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def load_circuit(path) -> Circuit:
    return circuit_from_dict(_read_json(path))


def assignment_from_dict(doc: Any) -> dict[str, int]:
    if not isinstance(doc, dict):
        raise FormatError("assignment document must map names to 0/1")
    out = {}
    for name, bit in doc.items():
        if bit not in (0, 1) or isinstance(bit, float):
            raise FormatError(f"value of {name!r} must be 0 or 1, got {bit!r}")
        out[name] = int(bit)
    return out


def load_assignment(path) -> dict[str, int]:
    return assignment_from_dict(_read_json(path))
