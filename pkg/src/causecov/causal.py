"""Binary recursive causal models: solving, actual cause and responsibility."""
from __future__ import annotations

import graphlib
import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from . import boolexpr
from .boolexpr import Expr
from .circuit.resp import RespResult
from .errors import CausalModelError, UnknownVariableError

DEF2 = "def2"
AC2_PRIME = "ac2prime"
VARIANTS = (DEF2, AC2_PRIME)


@dataclass(frozen=True)
class BinaryCausalModel:
    """Boolean structural equations over endogenous variables.

    ``exogenous`` names the inputs a context must set; every equation may
    mention endogenous variables and exogenous inputs, and the dependency
    graph between endogenous variables must be acyclic.
    """

    equations: Mapping[str, Expr]
    exogenous: tuple[str, ...] = ()
    order: tuple[str, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        eqs = dict(self.equations)
        exo = tuple(self.exogenous)
        object.__setattr__(self, "equations", eqs)
        object.__setattr__(self, "exogenous", exo)
        clash = set(eqs) & set(exo)
        if clash:
            raise CausalModelError(f"names are both endogenous and exogenous: {sorted(clash)}")
        known = set(eqs) | set(exo)
        deps = {}
        for name, expr in eqs.items():
            mentioned = expr.variables()
            unknown = mentioned - known
            if unknown:
                raise CausalModelError(f"equation for {name!r} mentions unknown {sorted(unknown)}")
            if name in mentioned:
                raise CausalModelError(f"equation for {name!r} mentions itself")
            deps[name] = sorted(mentioned & set(eqs))
        try:
            order = tuple(graphlib.TopologicalSorter(deps).static_order())
        except graphlib.CycleError as exc:
            raise CausalModelError(f"model is not recursive: cycle {exc.args[1]}") from None
        object.__setattr__(self, "order", order)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(self.equations))

    @classmethod
    def from_strings(cls, equations: Mapping[str, str], exogenous: Iterable[str] = ()):
        return cls({k: boolexpr.parse_expr(v) for k, v in equations.items()}, tuple(exogenous))


@dataclass(frozen=True)
class NotACause:
    """Distinguished result when AC1 fails (the event or the formula is false)."""

    reason: str

    def __bool__(self):
        return False


def _check_context(M: BinaryCausalModel, u: Mapping[str, int]) -> None:
    missing = set(M.exogenous) - set(u)
    extra = set(u) - set(M.exogenous)
    if missing:
        raise UnknownVariableError(f"context lacks exogenous input(s) {sorted(missing)}")
    if extra:
        raise UnknownVariableError(f"context sets unknown input(s) {sorted(extra)}")


def solve(
    M: BinaryCausalModel, u: Mapping[str, int], interventions: Mapping[str, int] | None = None
) -> dict[str, int]:
    """Unique solution of ``M`` in context ``u`` with intervened variables clamped."""
    _check_context(M, u)
    interventions = dict(interventions or {})
    for name in interventions:
        if name not in M.equations:
            raise UnknownVariableError(f"cannot intervene on unknown variable {name!r}")
    env = {k: int(v) for k, v in u.items()}
    for name in M.order:
        if name in interventions:
            env[name] = int(interventions[name])
        else:
            env[name] = M.equations[name].evaluate(env)
    return {name: env[name] for name in M.variables}


def _holds(M, u, phi: Expr, setting: Mapping[str, int]) -> bool:
    return bool(phi.evaluate(solve(M, u, setting)))


def _witnesses(M, u, X, x, phi, variant):
    """Yield AC2 witnesses ``(W, w')`` by increasing ``|W|``, lexicographically."""
    original = solve(M, u)
    others = [v for v in M.variables if v != X]
    mentioned = phi.variables()
    for size in range(len(others) + 1):
        for W in itertools.combinations(others, size):
            frozen = {}
            if variant == AC2_PRIME:
                frozen = {
                    z: original[z]
                    for z in others
                    if z not in W and z not in mentioned
                }
            for bits in itertools.product((0, 1), repeat=size):
                setting = dict(zip(W, bits))
                if _holds(M, u, phi, {**setting, X: 1 - x}):
                    continue
                if _holds(M, u, phi, {**frozen, **setting, X: x}):
                    yield frozenset(W), setting


def _ac1(M, u, X, x, phi, variant):
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if X not in M.equations:
        raise UnknownVariableError(f"unknown variable {X!r}")
    unknown = phi.variables() - set(M.equations)
    if unknown:
        raise UnknownVariableError(f"formula mentions non-model variable(s) {sorted(unknown)}")
    values = solve(M, u)
    if values[X] != int(x):
        return NotACause(f"AC1 fails: {X} = {values[X]}, not {int(x)}")
    if not phi.evaluate(values):
        return NotACause("AC1 fails: the formula is false in this context")
    return None


def is_cause(
    M: BinaryCausalModel,
    u: Mapping[str, int],
    X: str,
    x: int,
    phi: Expr | str,
    variant: str = DEF2,
):
    """Decide whether ``X = x`` is a cause of ``phi`` in ``(M, u)``.

    Returns ``(True, (W, w'))`` with the first witness in search order,
    ``(False, None)`` when AC2 fails, or a falsy :class:`NotACause` when AC1
    fails.
    """
    if isinstance(phi, str):
        phi = boolexpr.parse_expr(phi)
    failed = _ac1(M, u, X, x, phi, variant)
    if failed is not None:
        return failed
    for witness in _witnesses(M, u, X, int(x), phi, variant):
        return True, witness
    return False, None


def responsibility(
    M: BinaryCausalModel,
    u: Mapping[str, int],
    X: str,
    x: int,
    phi: Expr | str,
    variant: str = DEF2,
) -> RespResult:
    """``1/(|W|+1)`` for the smallest AC2 witness set ``W``; ``0`` if there is none."""
    if isinstance(phi, str):
        phi = boolexpr.parse_expr(phi)
    if _ac1(M, u, X, x, phi, variant) is not None:
        return RespResult()
    for W, _ in _witnesses(M, u, X, int(x), phi, variant):
        return RespResult.of(W)
    return RespResult()


def model_from_dict(doc) -> BinaryCausalModel:
    if not isinstance(doc, dict) or "equations" not in doc:
        raise CausalModelError("model document must have 'equations'")
    eqs = doc["equations"]
    if not isinstance(eqs, dict):
        raise CausalModelError("'equations' must map names to expressions")
    exo = doc.get("exogenous", [])
    try:
        return BinaryCausalModel.from_strings(eqs, exo)
    except boolexpr.ParseError as exc:
        raise CausalModelError(f"bad equation: {exc}") from exc


def load_model(path) -> BinaryCausalModel:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise CausalModelError(f"{path}: invalid JSON ({exc})") from exc
    return model_from_dict(doc)
