import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fewham.constructions import petersen
from fewham.formats import (
    FormatError,
    load_graph,
    parse_graph6,
    parse_multigraph_json,
    write_dot,
    write_graph6,
    write_multigraph_json,
)
from fewham.graphcore import MultiGraph, build_graph, complete_graph, cycle_graph


def _random_simple(rng, n):
    p = rng.random()
    return build_graph(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < p])


def test_single_vertex():
    G = parse_graph6("@")
    assert G.n == 1 and G.edge_units() == 0
    assert write_graph6(G) == b"@"


def test_k4_is_two_bytes():
    s = write_graph6(complete_graph(4))
    assert len(s) == 2 and s == b"C~"


def test_header_accepted():
    assert parse_graph6(b">>graph6<<C~") == complete_graph(4)


def test_hundred_round_trips_match_networkx():
    rng = random.Random(7)
    for _ in range(100):
        G = _random_simple(rng, rng.randint(1, 30))
        s = write_graph6(G)
        assert write_graph6(parse_graph6(s)) == s
        ref = nx.Graph()
        ref.add_nodes_from(range(G.n))
        ref.add_edges_from((u, v) for u, v, _k in G.edges())
        assert s == nx.to_graph6_bytes(ref, header=False).strip()


def test_large_n_size_field():
    G = build_graph(100, [(0, 99)])
    s = write_graph6(G)
    assert s[0] == 126
    assert parse_graph6(s) == G


def test_petersen_round_trip():
    P = petersen()
    assert parse_graph6(write_graph6(P)).same_edges(P)


@pytest.mark.parametrize(
    "bad, msg",
    [(b"C}!", "outside"), (b"C", "needs 1 data bytes"), (b"C~~", "needs"), (b"A`", "padding")],
)
def test_malformed_graph6(bad, msg):
    with pytest.raises(FormatError, match=msg):
        parse_graph6(bad)


def test_graph6_refuses_multigraph():
    G = MultiGraph(2, {(0, 1): 2})
    with pytest.raises(FormatError, match="multigraph_json"):
        write_graph6(G)


def test_json_double_edge():
    G = MultiGraph(2, {(0, 1): 2}, {0: "a"})
    text = write_multigraph_json(G)
    assert '"edges": [[0, 1, 2]]' in text
    assert parse_multigraph_json(text) == G
    assert load_graph(text) == G


def test_json_errors():
    with pytest.raises(FormatError):
        parse_multigraph_json("{not json")
    with pytest.raises(FormatError):
        parse_multigraph_json('{"edges": []}')
    with pytest.raises(FormatError, match="duplicate"):
        parse_multigraph_json('{"n": 2, "edges": [[0, 1, 1], [1, 0, 1]]}')


def test_dot_edge_statements():
    dot = write_dot(cycle_graph(3))
    assert dot.count("--") == 3
    assert write_dot(MultiGraph(2, {(0, 1): 2})).count("0 -- 1") == 2


@st.composite
def multigraphs(draw):
    n = draw(st.integers(1, 10))
    mult = {}
    for u in range(n):
        for v in range(u + 1, n):
            k = draw(st.integers(0, 3))
            if k:
                mult[(u, v)] = k
    labels = draw(st.dictionaries(st.integers(0, n - 1), st.text(max_size=5), max_size=3))
    return MultiGraph(n, mult, labels)


@settings(max_examples=80, deadline=None)
@given(multigraphs())
def test_json_round_trip(G):
    assert parse_multigraph_json(write_multigraph_json(G)) == G


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 30), st.randoms(use_true_random=False))
def test_graph6_round_trip_property(n, rng):
    G = _random_simple(rng, n)
    assert parse_graph6(write_graph6(G)).multiplicities() == G.multiplicities()
