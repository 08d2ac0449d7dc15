"""Linear-time responsibility for read-once formulas (literal trees)."""
from __future__ import annotations

import math

from ..errors import NotReadOnceError
from .core import AND, INPUT, NOT, OR, Assignment, Circuit
from .resp import RespResult

INF = math.inf


def _check_tree(tree: Circuit) -> None:
    parents: dict[str, int] = {}
    for gid in tree.order:
        for a in tree.gates[gid].args:
            parents[a] = parents.get(a, 0) + 1
    for gid in tree.order:
        gate = tree.gates[gid]
        if gate.kind in (AND, OR):
            continue
        if gate.kind == NOT:
            if tree.gates[gate.args[0]].kind != INPUT:
                raise NotReadOnceError(f"negation {gid!r} is not applied to a variable")
            continue
        if gate.kind != INPUT:
            raise NotReadOnceError(f"constant gate {gid!r} is not allowed in a read-once tree")
    for gid, count in parents.items():
        if count > 1:
            what = "variable" if tree.gates[gid].kind == INPUT else "gate"
            raise NotReadOnceError(f"{what} {gid!r} is used {count} times")
    for x in tree.inputs:
        if parents.get(x, 0) == 0 and x != tree.output:
            raise NotReadOnceError(f"variable {x!r} does not occur in the tree")


def resp_readonce(tree: Circuit, X: str, f: Assignment) -> RespResult:
    """Degree of responsibility of ``X`` for the root of a literal tree.

    One bottom-up pass. Every node ``u`` carries

    * ``val``  -- its value under ``f``;
    * ``c``    -- the fewest flips that change its value;
    * ``crit`` -- the fewest flips (never of ``X``) after which ``X`` is
      critical for ``u``; infinite when ``X`` is not below ``u``.

    Internal gates are monotone in the literal values, so once ``X`` is
    critical for ``u`` the value of ``u`` equals the value of ``X``'s literal.
    Criticality passes through an AND (OR) gate exactly when the sibling is 1
    (0), and the two subtrees share no variables, so costs add up. At the
    root the contingency must also preserve the original value, which holds
    iff the root already agrees with ``X``'s literal; otherwise ``dr = 0``.
    """
    tree.check_variable(X)
    _check_tree(tree)
    vec = tree.input_vector(f)
    vals = tree.run(vec)
    idx = tree.index

    c: dict[str, float] = {}
    crit: dict[str, float] = {}

    def cost_to(y, bit):
        return 0 if vals[idx[y]] == bit else c[y]

    for gid in tree.order:
        gate = tree.gates[gid]
        if gate.kind == INPUT:
            c[gid] = 1
            crit[gid] = 0 if gid == X else INF
        elif gate.kind == NOT:
            (a,) = gate.args
            c[gid] = 1
            crit[gid] = crit[a]
        else:
            u, v = gate.args
            controlling = 0 if gate.kind == AND else 1
            vu, vv = vals[idx[u]], vals[idx[v]]
            if vals[idx[gid]] == controlling:
                # one controlling child suffices; both are needed to lose it
                if vu == controlling and vv == controlling:
                    c[gid] = c[u] + c[v]
                else:
                    c[gid] = c[u] if vu == controlling else c[v]
            else:
                c[gid] = min(c[u], c[v])
            passing = 1 - controlling
            if crit[u] < INF:
                crit[gid] = crit[u] + cost_to(v, passing)
            elif crit[v] < INF:
                crit[gid] = crit[v] + cost_to(u, passing)
            else:
                crit[gid] = INF

    root = tree.output
    lit_x = _literal_value_of(tree, X, vals)
    if crit[root] == INF or vals[idx[root]] != lit_x:
        return RespResult()
    witness = _rebuild(tree, X, vals, c, crit)
    assert len(witness) == crit[root]
    return RespResult.of(witness)


def _literal_value_of(tree: Circuit, X: str, vals) -> int:
    idx = tree.index
    for gid in tree.order:
        gate = tree.gates[gid]
        if gate.kind == NOT and gate.args[0] == X:
            return vals[idx[gid]]
    return vals[idx[X]]


def _rebuild(tree, X, vals, c, crit) -> set[str]:
    idx = tree.index
    out: set[str] = set()

    def change(y):
        # realise c[y]: flip y's value with the fewest flips
        stack = [y]
        while stack:
            g = stack.pop()
            gate = tree.gates[g]
            if gate.kind == INPUT:
                out.add(g)
            elif gate.kind == NOT:
                stack.append(gate.args[0])
            else:
                u, v = gate.args
                controlling = 0 if gate.kind == AND else 1
                if vals[idx[g]] == controlling:
                    stack.extend(a for a in (u, v) if vals[idx[a]] == controlling)
                else:
                    stack.append(u if c[u] <= c[v] else v)

    node = tree.output
    while True:
        gate = tree.gates[node]
        if gate.kind == INPUT:
            break
        if gate.kind == NOT:
            node = gate.args[0]
            continue
        u, v = gate.args
        passing = 1 if gate.kind == AND else 0
        onpath, other = (u, v) if crit[u] < INF else (v, u)
        if vals[idx[other]] != passing:
            change(other)
        node = onpath
    return out
