"""Maximum clique through responsibility, with a brute-force cross-check.

For a graph ``G = (V, E)`` the circuit is ``X & AND_{(u, v) not in E} (u | v)``
under the all-zero assignment. A minimal contingency that makes ``X`` critical
sets a vertex cover of the complement graph to 1, so its size ``k`` equals
``|V| - omega(G)``.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .circuit.core import Circuit, CircuitBuilder
from .circuit.resp import resp_brute
from .errors import FormatError

DEFAULT_BRUTE_BOUND = 16


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges are stored as sorted vertex pairs."""

    vertices: frozenset[str]
    edges: frozenset[tuple[str, str]]

    def __init__(self, vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()):
        vs = frozenset(str(v) for v in vertices)
        es = set()
        for e in edges:
            pair = tuple(str(v) for v in e)
            if len(pair) != 2:
                raise ValueError(f"edge {e!r} does not have two endpoints")
            a, b = pair
            if a == b:
                raise ValueError(f"self-loop on {a!r}")
            if a not in vs or b not in vs:
                raise ValueError(f"edge {a!r}-{b!r} uses an unknown vertex")
            es.add((a, b) if a < b else (b, a))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(es))

    def adjacent(self, a: str, b: str) -> bool:
        return ((a, b) if a < b else (b, a)) in self.edges

    def non_edges(self) -> list[tuple[str, str]]:
        return [p for p in itertools.combinations(sorted(self.vertices), 2) if p not in self.edges]


def _fresh(base: str, taken) -> str:
    name = base
    i = 0
    while name in taken:
        i += 1
        name = f"{base}_{i}"
    return name


def build_clique_circuit(G: Graph) -> tuple[Circuit, dict[str, int], str]:
    """``(C, F, X)`` with ``C = X & C_G`` and ``F`` all zero."""
    X = _fresh("X", G.vertices)
    b = CircuitBuilder(share=False, prefix="n")
    for v in sorted(G.vertices):
        b.var(v)
    x = b.var(X)
    clauses = [b.or_(u, v) for u, v in G.non_edges()]
    out = b.and_(x, b.big_and(clauses))
    circuit = b.build(out)
    f = {name: 0 for name in circuit.inputs}
    return circuit, f, X


def max_clique_via_resp(G: Graph) -> int:
    """``|V| - k`` where ``k`` is the minimal contingency size for ``X``."""
    circuit, f, X = build_clique_circuit(G)
    res = resp_brute(circuit, X, None, f)
    # X & C_G with every vertex set to 1 is true, so a witness always exists
    assert res.witness_size is not None
    return len(G.vertices) - res.witness_size


def brute_max_clique(G: Graph, bound: int = DEFAULT_BRUTE_BOUND) -> int:
    if len(G.vertices) > bound:
        raise ValueError(f"graph has {len(G.vertices)} vertices; brute force is limited to {bound}")
    vs = sorted(G.vertices)
    for size in range(len(vs), 0, -1):
        for subset in itertools.combinations(vs, size):
            if all(G.adjacent(a, b) for a, b in itertools.combinations(subset, 2)):
                return size
    return 0


def random_graph(n: int, p: float, seed: int) -> Graph:
    """``G(n, p)`` on vertices ``v0 .. v{n-1}``, reproducible from ``seed``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    rng = random.Random(seed)
    vs = [f"v{i}" for i in range(n)]
    edges = [(a, b) for a, b in itertools.combinations(vs, 2) if rng.random() < p]
    return Graph(vs, edges)


def all_graphs(n: int):
    """Every labelled graph on ``v0 .. v{n-1}``."""
    vs = [f"v{i}" for i in range(n)]
    pairs = list(itertools.combinations(vs, 2))
    for mask in range(1 << len(pairs)):
        yield Graph(vs, [e for i, e in enumerate(pairs) if mask >> i & 1])


def graph_to_dict(G: Graph) -> dict:
    return {"vertices": sorted(G.vertices), "edges": [list(e) for e in sorted(G.edges)]}


def graph_from_dict(doc) -> Graph:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise FormatError("graph document must have 'vertices' (and optionally 'edges')")
    try:
        return Graph(doc["vertices"], doc.get("edges", []))
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad graph: {exc}") from exc


def load_graph(path) -> Graph:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    return graph_from_dict(doc)
