import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causecov.circuit import evaluate, flip, resp_brute
from causecov.cliquebench import (
    Graph,
    all_graphs,
    brute_max_clique,
    build_clique_circuit,
    graph_from_dict,
    graph_to_dict,
    load_graph,
    max_clique_via_resp,
    random_graph,
)
from causecov.errors import FormatError

K3 = Graph("abc", [("a", "b"), ("b", "c"), ("a", "c")])
PATH = Graph("abc", [("a", "b"), ("b", "c")])


def dr(G):
    c, f, X = build_clique_circuit(G)
    return resp_brute(c, X, None, f)


def test_single_edge():
    G = Graph("ab", [("a", "b")])
    c, f, X = build_clique_circuit(G)
    assert set(f.values()) == {0}
    assert any(g.kind == "const1" for g in c.gates.values())
    assert dr(G).dr == 1


def test_two_isolated_vertices():
    r = dr(Graph("ab"))
    assert r.dr == Fraction(1, 2) and r.witness == {"a"}


def test_empty_graph():
    assert dr(Graph([])).dr == 1
    assert max_clique_via_resp(Graph([])) == 0
    assert brute_max_clique(Graph([])) == 0


def test_fresh_distinguished_variable():
    c, f, X = build_clique_circuit(Graph(["X", "Y"]))
    assert X not in ("X", "Y") and X in c.inputs


@pytest.mark.parametrize(
    "G,omega",
    [(K3, 3), (PATH, 2), (Graph("abc"), 1), (Graph("abcd", itertools.combinations("abcd", 2)), 4)],
)
def test_max_clique_examples(G, omega):
    assert brute_max_clique(G) == omega
    assert max_clique_via_resp(G) == omega


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph("ab", [("a", "a")])
    with pytest.raises(ValueError):
        Graph("ab", [("a", "z")])
    with pytest.raises(ValueError):
        random_graph(4, 1.5, 0)
    with pytest.raises(ValueError):
        brute_max_clique(random_graph(17, 0.5, 0))


def test_random_graph_extremes_and_determinism():
    assert random_graph(6, 0.0, 1).edges == frozenset()
    assert len(random_graph(6, 1.0, 1).edges) == 15
    assert random_graph(8, 0.5, 42) == random_graph(8, 0.5, 42)


def test_graph_io(tmp_path):
    G = random_graph(5, 0.5, 3)
    assert graph_from_dict(graph_to_dict(G)) == G
    p = tmp_path / "g.json"
    p.write_text('{"vertices": ["a"], "edges": [["a", "a"]]}')
    with pytest.raises(FormatError):
        load_graph(p)


def test_exhaustive_small_graphs():
    for n in range(5):
        for G in all_graphs(n):
            assert max_clique_via_resp(G) == brute_max_clique(G)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.floats(0, 1), st.integers(0, 10**6))
def test_reduction_and_witness(n, p, seed):
    G = random_graph(n, p, seed)
    assert max_clique_via_resp(G) == brute_max_clique(G)
    c, f, X = build_clique_circuit(G)
    r = resp_brute(c, X, None, f)
    fz = flip(f, r.witness)
    assert evaluate(c, fz)[c.output] == 0
    assert evaluate(c, flip(fz, {X}))[c.output] == 1
