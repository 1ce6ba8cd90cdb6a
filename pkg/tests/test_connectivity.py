import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fewham.connectivity import (
    certificate,
    disconnects_edges,
    disconnects_vertices,
    edge_connectivity,
    oracle_connectivity,
    vertex_connectivity,
)
from fewham.constructions import double_one_factor, perfect_matchings, petersen
from fewham.graphcore import (
    GraphError,
    MultiGraph,
    build_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
)


def _two_k4_bridge():
    edges = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    edges += [(i + 4, j + 4) for i, j in edges] + [(0, 4)]
    return build_graph(8, edges)


@pytest.mark.parametrize(
    "G, kappa, lam",
    [
        (complete_graph(5), 4, 4),
        (cycle_graph(7), 2, 2),
        (path_graph(5), 1, 1),
        (complete_bipartite(3, 4), 3, 3),
        (_two_k4_bridge(), 1, 1),
        (build_graph(4, [(0, 1), (2, 3)]), 0, 0),
    ],
)
def test_catalog(G, kappa, lam):
    assert vertex_connectivity(G)[0] == kappa
    assert edge_connectivity(G)[0] == lam


def test_petersen(P):
    c = certificate(P)
    assert (c.vertex_connectivity, c.edge_connectivity) == (3, 3)
    assert disconnects_vertices(P, c.witness_vertex_cut)
    assert disconnects_edges(P, c.witness_edge_cut)


def test_doubled_matching_has_edge_connectivity_four(P):
    for M in perfect_matchings(P):
        lam, cut = edge_connectivity(double_one_factor(P, M))
        assert lam == 4 and len(cut) == 4


def test_parallel_copies_are_capacity():
    G = MultiGraph(2, {(0, 1): 3})
    lam, cut = edge_connectivity(G)
    assert lam == 3 and len(cut) == 3 and disconnects_edges(G, cut)


def test_multigraph_vertex_connectivity_rejected():
    with pytest.raises(GraphError, match="simple"):
        vertex_connectivity(MultiGraph(3, {(0, 1): 2, (1, 2): 1}))


def test_complete_graph_empty_witness():
    assert vertex_connectivity(complete_graph(6)) == (5, [])


def test_oracle_bounds():
    with pytest.raises(ValueError):
        oracle_connectivity(complete_graph(13), "vertex")
    with pytest.raises(ValueError):
        oracle_connectivity(complete_graph(3), "arc")


def _random_simple(rng, n, p):
    return build_graph(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < p])


def test_flows_match_oracle_and_networkx():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(2, 9)
        G = _random_simple(rng, n, rng.uniform(0.3, 0.9))
        kv, vcut = vertex_connectivity(G)
        kq, _ = vertex_connectivity(G, all_pairs=True)
        ke, ecut = edge_connectivity(G)
        assert kv == kq == oracle_connectivity(G, "vertex")
        assert ke == oracle_connectivity(G, "edge")
        ref = nx.Graph()
        ref.add_nodes_from(range(n))
        ref.add_edges_from((u, v) for u, v, _k in G.edges())
        assert kv == nx.node_connectivity(ref)
        assert ke == nx.edge_connectivity(ref)
        if vcut:
            assert len(vcut) == kv and disconnects_vertices(G, vcut)
        if ecut:
            assert len(ecut) == ke and disconnects_edges(G, ecut)


@st.composite
def multigraphs(draw):
    n = draw(st.integers(2, 7))
    mult = {}
    for u in range(n):
        for v in range(u + 1, n):
            k = draw(st.sampled_from([0, 0, 1, 2]))
            if k:
                mult[(u, v)] = k
    return MultiGraph(n, mult)


@settings(max_examples=60, deadline=None)
@given(multigraphs())
def test_multigraph_edge_mode(G):
    lam, cut = edge_connectivity(G)
    assert lam == oracle_connectivity(G, "edge")
    if cut:
        assert disconnects_edges(G, cut)
