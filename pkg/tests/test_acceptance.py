"""Acceptance criteria, one test (or parametrized group) per criterion.

``pytest tests/test_acceptance.py`` ends with a summary line per criterion.
"""
import math
import random
import time
from fractions import Fraction

import pytest

from causecov import coverage, ctl
from causecov.circuit import Circuit, evaluate, resp_binsearch, resp_brute, resp_readonce
from causecov.cliquebench import all_graphs, brute_max_clique, max_clique_via_resp, random_graph

from oracles import (
    equivalent_pair,
    random_assignment,
    random_circuit,
    random_kripke,
    random_literal_tree,
    random_pnf,
    table_has_witness,
    truth_tables,
)

TIME_LIMIT = 60.0
SPEC = "AG(req -> AF grant)"


@pytest.fixture
def stopwatch():
    start = time.perf_counter()
    yield
    assert time.perf_counter() - start < TIME_LIMIT


@pytest.mark.parametrize("engine", ["direct", "circuit"])
def test_criterion_1_req_grant_golden(req_grant, engine, stopwatch):
    rep = coverage.coverage_report(req_grant, SPEC, "grant", engine)
    expected = {
        "w7": Fraction(1), "w2": Fraction(1, 3), "w3": Fraction(1, 3), "w4": Fraction(1, 3),
        "w5": Fraction(0), "w0": Fraction(0), "w1": Fraction(0), "w6": Fraction(0),
    }
    assert {r.state: r.responsibility.dr for r in rep.records} == expected
    assert rep.covered() == {"w7"}
    assert rep.causes() == {"w2", "w3", "w4", "w7"}
    assert coverage.covered_states(req_grant, SPEC, "grant") == {"w7"}


MAJ_U = "(X & Y) | (X & Z) | (Y & Z) | (X & U)"


@pytest.mark.parametrize(
    "text,var,f,expected",
    [
        ("X1 | X2", "X1", "all-1", Fraction(1, 2)),
        (" | ".join(f"X{i}" for i in range(1, 101)), "X1", "all-1", Fraction(1, 100)),
        (MAJ_U, "X", {"X": 1, "Y": 1, "Z": 1, "U": 1}, Fraction(1, 3)),
        (MAJ_U, "X", {"X": 0, "Y": 1, "Z": 1, "U": 1}, Fraction(0)),
        (MAJ_U, "X", {"X": 1, "Y": 1, "Z": 0, "U": 0}, Fraction(1)),
    ],
    ids=["or2", "or100", "maj-f1", "maj-f2", "maj-f3"],
)
def test_criterion_2_circuit_golden(text, var, f, expected, stopwatch):
    c = Circuit.from_formula(text)
    if f == "all-1":
        f = {v: 1 for v in c.inputs}
    assert resp_brute(c, var, None, f).dr == expected


def test_criterion_3_direct_circuit_equivalence(stopwatch):
    rng = random.Random(20240503)
    instances = 0
    while instances < 500:
        K = random_kripke(rng, rng.randint(1, 5))
        phi = random_pnf(rng, 3)
        if not ctl.satisfies(K, phi):
            continue
        q = rng.choice(sorted(K.atoms))
        direct = coverage.coverage_report(K, phi, q, "direct")
        circuit = coverage.coverage_report(K, phi, q, "circuit")
        for a, b in zip(direct.records, circuit.records):
            assert a.state == b.state
            assert a.responsibility.dr == b.responsibility.dr, (ctl.to_string(phi), q, a.state)
        instances += 1


def test_criterion_4_engine_agreement(stopwatch):
    rng = random.Random(4)
    for _ in range(1000):
        tree = random_literal_tree(rng, max_leaves=16)
        f = random_assignment(rng, tree.inputs)
        X = rng.choice(tree.inputs)
        exact = resp_brute(tree, X, None, f).dr
        assert resp_readonce(tree, X, f).dr == exact
        res, queries = resp_binsearch(tree, X, f)
        assert res.dr == exact
        assert queries <= math.ceil(math.log2(len(tree.inputs) + 1)) + 1


def test_criterion_5_monotone_lemma(stopwatch):
    rng = random.Random(5)
    checked = 0
    for _ in range(1000):
        c = random_circuit(rng, rng.randint(1, 12), rng.randint(1, 24), monotone=True)
        f = random_assignment(rng, c.inputs)
        vals = evaluate(c, f)
        tables = truth_tables(c)
        for X in c.inputs:
            for w in c.gates:
                if vals[w] != vals[X]:
                    checked += 1
                    assert resp_brute(c, X, w, f).dr == 0
                    assert not table_has_witness(c, tables, X, w, f)
    assert checked > 1000


def test_criterion_6_semantic_insensitivity(stopwatch):
    rng = random.Random(6)
    for _ in range(200):
        c1, c2 = equivalent_pair(rng, max_inputs=10)
        f = random_assignment(rng, c1.inputs)
        for X in c1.inputs:
            assert resp_brute(c1, X, None, f).dr == resp_brute(c2, X, None, f).dr


def test_criterion_7_clique_reduction(stopwatch):
    for n in range(6):
        for G in all_graphs(n):
            assert max_clique_via_resp(G) == brute_max_clique(G)
    rng = random.Random(7)
    for i in range(240):
        G = random_graph(6 + i % 3, rng.random(), rng.randrange(10**9))
        assert max_clique_via_resp(G) == brute_max_clique(G)


def test_criterion_8_cover_prime_golden(until_path, stopwatch):
    assert coverage.covered_prime_states(until_path, "A[p U q]", "q") == {"w1"}
    assert coverage.covered_states(until_path, "A[p U q]", "q") == set()
    out, fresh = coverage.trans_q(ctl.parse("A[p U q]"), "q")
    expected = ctl.And(
        ctl.AU(ctl.Atom("p"), ctl.Atom("q")),
        ctl.AU(ctl.And(ctl.Atom("p"), ctl.Not(ctl.Atom("q"))), ctl.Atom(fresh)),
    )
    assert fresh == "q'" and out == expected
