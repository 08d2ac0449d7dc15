"""Criticality, cause and degree of responsibility in Boolean circuits.

All engines report responsibility exactly: a witness size ``k`` stands for
``dr = 1/(k+1)`` and a missing witness for ``dr = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..errors import UnknownVariableError
from .core import NOT, Assignment, Circuit

__all__ = [
    "RespResult",
    "BelowThreshold",
    "is_critical",
    "is_cause",
    "resp_brute",
    "resp_bounded",
    "oracle_lc",
    "resp_binsearch",
]


@dataclass(frozen=True)
class RespResult:
    """Exact degree of responsibility with a minimal witness.

    ``witness_size is None`` means no contingency exists and ``dr == 0``.
    """

    witness_size: int | None = None
    witness: frozenset | None = None

    def __post_init__(self):
        if (self.witness_size is None) != (self.witness is None):
            raise ValueError("witness and witness_size must be given together")
        if self.witness is not None:
            object.__setattr__(self, "witness", frozenset(self.witness))
            if len(self.witness) != self.witness_size:
                raise ValueError("witness_size does not match the witness")

    @classmethod
    def of(cls, witness: Iterable | None) -> "RespResult":
        if witness is None:
            return cls()
        witness = frozenset(witness)
        return cls(len(witness), witness)

    @property
    def dr(self) -> Fraction:
        if self.witness_size is None:
            return Fraction(0)
        return Fraction(1, self.witness_size + 1)

    @property
    def is_cause(self) -> bool:
        return self.witness_size is not None

    @property
    def is_critical(self) -> bool:
        return self.witness_size == 0

    def __str__(self):
        return str(self.dr)


@dataclass(frozen=True)
class BelowThreshold:
    """Marker returned by bounded search: ``dr < 1/k``."""

    k: int

    @property
    def is_critical(self) -> bool:
        return False

    def __str__(self):
        return f"dr < 1/{self.k}"


def is_critical(circuit: Circuit, X: str, w: str, f: Assignment) -> bool:
    """True iff flipping ``X`` alone changes the value of gate ``w``."""
    circuit.check_variable(X)
    circuit.check_gate(w)
    vec = circuit.input_vector(f)
    wi = circuit.index[w]
    before = circuit.run(vec)[wi]
    xi = circuit.index[X]
    vec[xi] = 1 - vec[xi]
    return circuit.run(vec)[wi] != before


def _path_parities(circuit: Circuit, X: str, w: str, cone) -> set[int]:
    """Numbers of NOT gates, mod 2, over the paths from ``X`` up to ``w``."""
    par: dict[str, set[int]] = {}
    for g in circuit.order:
        if g not in cone:
            continue
        gate = circuit.gates[g]
        if g == X:
            par[g] = {0}
        elif gate.kind == NOT:
            par[g] = {1 - p for p in par[gate.args[0]]}
        else:
            par[g] = set().union(*(par[a] for a in gate.args)) if gate.args else set()
    return par[w]


class _Search:
    """Pruned enumeration of contingencies for one (circuit, X, w, f, mutable).

    Candidate sets are visited by increasing size and, within a size, in
    lexicographic order of their sorted members -- the same order as a plain
    ``itertools.combinations`` sweep. A branch is cut as soon as three-valued
    evaluation (undecided variables unknown) shows that either requirement
    fails: ``w`` keeps its value under the contingency, and flips when ``X``
    flips as well.
    """

    def __init__(self, circuit: Circuit, X: str, w: str, f: Assignment, mutable=None):
        circuit.check_variable(X)
        circuit.check_gate(w)
        if mutable is None:
            mutable = circuit.inputs
        mutable = set(mutable)
        for v in mutable:
            circuit.check_variable(v)
        if X not in mutable:
            raise UnknownVariableError(f"{X!r} is not in the mutable set")
        self.base = circuit.input_vector(f)
        self.n_in = len(circuit.inputs)
        self.wi = circuit.index[w]
        self.xi = circuit.index[X]
        cone = circuit.cone(w)
        self.relevant = X in cone
        self.candidates = sorted(v for v in mutable if v != X and v in cone)
        self.cand_idx = [circuit.index[v] for v in self.candidates]
        prog = circuit._program
        self.steps = [
            (i, *prog[i]) for i in range(self.n_in, len(prog)) if circuit.order[i] in cone
        ]
        self.size = len(prog)
        values = circuit.run(self.base)
        self.fw = values[self.wi]
        if self.relevant:
            # w unate in X: flipping X moves w in one direction only, so
            # X can be critical only if f(w) agrees with f(X) up to that parity
            parity = _path_parities(circuit, X, w, cone)
            if len(parity) == 1:
                (p,) = parity
                self.relevant = self.fw == values[self.xi] ^ p
        self._by_size: dict[int, frozenset | None] = {}

    def _eval3(self, v):
        for step in self.steps:
            i, op = step[0], step[1]
            if op == 2:
                a, b = v[step[2]], v[step[3]]
                v[i] = 0 if (a == 0 or b == 0) else (1 if (a == 1 and b == 1) else None)
            elif op == 3:
                a, b = v[step[2]], v[step[3]]
                v[i] = 1 if (a == 1 or b == 1) else (0 if (a == 0 and b == 0) else None)
            elif op == 1:
                a = v[step[2]]
                v[i] = None if a is None else 1 - a
            else:
                v[i] = 1 if op == 5 else 0
        return v[self.wi]

    def _status(self, chosen: set, pos: int, closed: bool):
        """Evaluate both copies; ``closed`` means undecided candidates stay unflipped."""
        v1 = list(self.base) + [None] * (self.size - self.n_in)
        for j, idx in enumerate(self.cand_idx):
            if j < pos or closed:
                v1[idx] = 1 - self.base[idx] if j in chosen else self.base[idx]
            else:
                v1[idx] = None
        v2 = list(v1)
        v2[self.xi] = 1 - self.base[self.xi]
        a = self._eval3(v1)
        if a is not None and a != self.fw:
            return False
        b = self._eval3(v2)
        if b is not None and b == self.fw:
            return False
        if a is None or b is None:
            return None
        return True

    def _dfs(self, pos: int, chosen: set, budget: int):
        n = len(self.cand_idx)
        if len(chosen) + (n - pos) < budget:
            return None
        closed = len(chosen) == budget or pos == n
        status = self._status(chosen, pos, closed)
        if status is False:
            return None
        if closed:
            return frozenset(self.candidates[j] for j in chosen) if status else None
        chosen.add(pos)
        found = self._dfs(pos + 1, chosen, budget)
        chosen.discard(pos)
        if found is not None:
            return found
        return self._dfs(pos + 1, chosen, budget)

    def witness_of_size(self, budget: int):
        """Lexicographically least witness of exactly ``budget`` members, or None."""
        if not self.relevant or budget > len(self.candidates):
            return None
        if budget not in self._by_size:
            self._by_size[budget] = self._dfs(0, set(), budget)
        return self._by_size[budget]

    def minimal(self, max_size: int | None = None):
        """Least-size, then lexicographically least, witness with at most ``max_size`` members."""
        if not self.relevant:
            return None
        limit = len(self.candidates) if max_size is None else min(max_size, len(self.candidates))
        for budget in range(limit + 1):
            found = self.witness_of_size(budget)
            if found is not None:
                return found
        return None


def resp_brute(
    circuit: Circuit, X: str, w: str | None, f: Assignment, mutable: Iterable[str] | None = None
) -> RespResult:
    """Exact ``dr(C, X, w, f)`` by exhaustive search over contingencies.

    Only variables in ``mutable`` (default: every input) may be flipped.
    Among witnesses of minimal size the lexicographically least is returned.

    >>> c = Circuit.from_formula("X1 | X2")
    >>> resp_brute(c, "X1", None, {"X1": 1, "X2": 1}).dr
    Fraction(1, 2)
    """
    w = circuit.output if w is None else w
    return RespResult.of(_Search(circuit, X, w, f, mutable).minimal())


def is_cause(
    circuit: Circuit, X: str, w: str | None, f: Assignment, mutable: Iterable[str] | None = None
) -> bool:
    """True iff some contingency over ``mutable`` makes ``X`` critical for ``w``."""
    return resp_brute(circuit, X, w, f, mutable).is_cause


def resp_bounded(
    circuit: Circuit,
    X: str,
    f: Assignment,
    mutable: Iterable[str] | None = None,
    k: int = 1,
    w: str | None = None,
) -> RespResult | BelowThreshold:
    """Decide ``dr >= 1/k`` looking only at contingencies of size ``<= k-1``.

    Returns the exact result when a witness fits within the bound and
    :class:`BelowThreshold` otherwise. Cost is ``O(|X|^(k-1))`` criticality checks.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"threshold k must be a positive integer, got {k!r}")
    w = circuit.output if w is None else w
    found = _Search(circuit, X, w, f, mutable).minimal(k - 1)
    if found is None:
        return BelowThreshold(k)
    return RespResult.of(found)


def _oracle(search: _Search, i: int):
    if not isinstance(i, int) or i < 1:
        raise ValueError(f"oracle bound i must be a positive integer, got {i!r}")
    return search.minimal(i - 1)


def oracle_lc(circuit: Circuit, X: str, f: Assignment, i: int) -> bool:
    """Membership query ``dr(C, X, f) >= 1/i`` over all inputs of ``C``."""
    return _oracle(_Search(circuit, X, circuit.output, f), i) is not None


def resp_binsearch(circuit: Circuit, X: str, f: Assignment) -> tuple[RespResult, int]:
    """Binary search over ``{1, 1/2, ..., 1/n, 0}`` driven by :func:`oracle_lc`.

    Returns the result together with the number of oracle queries issued,
    which never exceeds ``ceil(log2(n+1))`` for ``n`` inputs.
    """
    search = _Search(circuit, X, circuit.output, f)
    n = len(circuit.inputs)
    # smallest i in [1, n] with dr >= 1/i; i = n+1 encodes dr = 0
    lo, hi = 1, n + 1
    best = None
    queries = 0
    while lo < hi:
        mid = (lo + hi) // 2
        queries += 1
        found = _oracle(search, mid)
        if found is not None:
            hi = mid
            best = found
        else:
            lo = mid + 1
    assert queries <= math.ceil(math.log2(n + 1))
    return RespResult.of(best), queries
