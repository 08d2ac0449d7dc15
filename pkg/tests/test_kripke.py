import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causecov import ctl, kripke
from causecov.errors import KripkeError, UnknownVariableError
from causecov.kripke import KripkeStructure, mutate

from oracles import random_kripke

SPEC = "AG(req -> AF grant)"


def test_req_grant_fixture(req_grant):
    assert len(req_grant.states) == 8 and req_grant.initial == "w0"
    assert req_grant.successors("w0") == ("w1", "w5", "w6")
    assert req_grant.labels["w7"] == {"grant"}
    assert req_grant.labels["w6"] == {"req"}


def test_single_state_self_loop():
    K = KripkeStructure(("s",), "s", {("s", "s")}, {"s": {"p"}}, {"p"})
    assert K.successors("s") == ("s",)


@pytest.mark.parametrize(
    "doc,fragment",
    [
        ({"atoms": [], "states": ["a", "b"], "initial": "a", "transitions": [["a", "b"]]}, "not total"),
        ({"atoms": [], "states": ["a", "a"], "initial": "a", "transitions": [["a", "a"]]}, "duplicate"),
        ({"atoms": [], "states": ["a"], "initial": "a", "transitions": [["a", "z"]]}, "dangling"),
        ({"atoms": [], "states": ["a"], "initial": "z", "transitions": [["a", "a"]]}, "initial"),
        (
            {"atoms": ["p"], "states": [{"id": "a", "labels": ["r"]}], "initial": "a", "transitions": [["a", "a"]]},
            "unknown proposition",
        ),
        ({"atoms": [], "states": ["a"], "initial": "a"}, "transitions"),
        ({"atoms": [], "states": ["a"], "initial": "a", "transitions": [["a"]]}, "malformed"),
    ],
)
def test_validation_errors(doc, fragment):
    with pytest.raises(KripkeError, match=fragment):
        kripke.from_dict(doc)


def test_invalid_json():
    with pytest.raises(KripkeError):
        kripke.loads("{not json")


def test_mutate_req_grant(req_grant):
    assert not ctl.satisfies(mutate(req_grant, {"w7"}, "grant"), SPEC)
    assert ctl.satisfies(mutate(req_grant, {"w5"}, "grant"), SPEC)


def test_mutate_errors(req_grant):
    with pytest.raises(UnknownVariableError):
        mutate(req_grant, {"w99"}, "grant")
    with pytest.raises(UnknownVariableError):
        mutate(req_grant, {"w1"}, "ack")


def test_natural_order():
    assert sorted(["w10", "w2", "w1"], key=kripke.natural_key) == ["w1", "w2", "w10"]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_roundtrip_and_mutation_properties(seed):
    rng = random.Random(seed)
    K = random_kripke(rng, rng.randint(1, 6))
    assert kripke.loads(kripke.dumps(K)) == K
    assert json.loads(kripke.dumps(K))["initial"] == K.initial
    Z = set(rng.sample(K.states, rng.randint(0, len(K.states))))
    q = rng.choice(sorted(K.atoms))
    M = mutate(K, Z, q)
    assert mutate(M, Z, q) == K
    assert (M.states, M.initial, M.transitions) == (K.states, K.initial, K.transitions)
    for s in K.states:
        assert (K.labels[s] ^ M.labels[s]) == ({q} if s in Z else set())
