import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fewham.constructions import petersen
from fewham.frontier import count_hamiltonian_cycles_frontier
from fewham.graphcore import (
    EdgeRef,
    GraphError,
    MultiGraph,
    build_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
)
from fewham.hamilton import (
    Budget,
    brute_force_count,
    count_hamiltonian_cycles,
    count_through_edge,
    cycle_vertex_sequence,
    enumerate_two_factors,
    exists_split_two_factor,
    has_hamiltonian_path,
    is_hamiltonian_path,
)


def count(G, **kw):
    return count_hamiltonian_cycles(G, **kw).count


@pytest.mark.parametrize(
    "G, expected",
    [
        (complete_graph(4), 3),
        (complete_graph(5), 12),
        (complete_bipartite(3, 3), 6),
        (petersen(), 0),
        (complete_graph(8), 2520),
    ],
)
def test_known_counts(G, expected):
    assert count(G) == expected
    assert count(G, method="frontier") == expected


@pytest.mark.parametrize("n", range(3, 13))
def test_cycles_have_one(n):
    assert count(cycle_graph(n)) == 1


def test_tiny_graphs_count_zero():
    assert count(MultiGraph(2, {(0, 1): 2})) == 0
    assert count(MultiGraph(0)) == 0


def test_parallel_edges_give_distinct_cycles():
    G = MultiGraph(3, {(0, 1): 2, (1, 2): 1, (0, 2): 1})
    rep = count_hamiltonian_cycles(G, retain=True)
    assert rep.count == 2 == brute_force_count(G)
    assert {c[0] for c in rep.cycles} == {EdgeRef(0, 1, 0), EdgeRef(0, 1, 1)}


def test_retained_cycles_are_hamiltonian():
    G = complete_graph(6)
    rep = count_hamiltonian_cycles(G, retain=True)
    assert len(rep.cycles) == rep.count == 60
    for cyc in rep.cycles:
        assert len(cyc) == G.n
        seq = cycle_vertex_sequence(cyc)
        assert sorted(seq) == list(range(G.n))
        assert seq[0] == 0 and seq[1] < seq[-1]
    assert len(set(rep.cycles)) == rep.count


def test_through_edge():
    K = complete_graph(4)
    assert all(count_through_edge(K, r) == 2 for r in K.edge_refs())
    assert count_through_edge(cycle_graph(7), EdgeRef(0, 1)) == 1
    P = petersen()
    assert count_through_edge(P, EdgeRef(0, 1)) == 0
    with pytest.raises(GraphError):
        count_through_edge(P, EdgeRef(0, 2))


def test_edge_sum_identity():
    rng = random.Random(5)
    for _ in range(20):
        G = _random_multigraph(rng, rng.randint(4, 8))
        total = count(G)
        assert sum(count_through_edge(G, r) for r in G.edge_refs()) == G.n * total


def test_forbidden_complements_forced():
    G = complete_graph(6)
    r = EdgeRef(0, 1)
    assert count(G, forced=[r]) + count(G, forbidden=[r]) == count(G)
    assert count(G, forced=[r], forbidden=[r]) == 0


def test_budget_flags_lower_bound():
    rep = count_hamiltonian_cycles(complete_graph(8), budget=Budget(max_nodes=50))
    assert rep.budget_exhausted and not rep.exact
    assert rep.count <= 2520


def test_stop_after():
    rep = count_hamiltonian_cycles(complete_graph(7), stop_after=2)
    assert rep.count == 2 and rep.stopped_early


def test_root_is_lowest_degree_vertex():
    # vertex 5 is the only degree-2 vertex: root branching has a single forced option
    G = build_graph(6, [(i, j) for i in range(5) for j in range(i + 1, 5)] + [(5, 0), (5, 1)])
    rep = count_hamiltonian_cycles(G, split_depth=0)
    assert rep.count == brute_force_count(G)


def test_workers_do_not_change_anything():
    G = complete_graph(7)
    one = count_hamiltonian_cycles(G, retain=True, workers=1)
    two = count_hamiltonian_cycles(G, retain=True, workers=2)
    assert (one.count, one.nodes_expanded, one.cycles) == (two.count, two.nodes_expanded, two.cycles)


def test_brute_force_limit():
    with pytest.raises(ValueError):
        brute_force_count(complete_graph(12))


def _random_multigraph(rng, n):
    mult = {}
    for _ in range(rng.randint(n, 3 * n)):
        u, v = rng.sample(range(n), 2)
        k = (min(u, v), max(u, v))
        mult[k] = mult.get(k, 0) + 1
    return MultiGraph(n, mult)


@st.composite
def small_multigraphs(draw):
    n = draw(st.integers(3, 8))
    mult = {}
    for u in range(n):
        for v in range(u + 1, n):
            k = draw(st.sampled_from([0, 0, 1, 1, 2]))
            if k:
                mult[(u, v)] = k
    return MultiGraph(n, mult)


@settings(max_examples=120, deadline=None)
@given(small_multigraphs())
def test_three_routes_agree(G):
    bf = brute_force_count(G)
    assert count(G) == bf
    assert count_hamiltonian_cycles_frontier(G) == bf


# -- paths -------------------------------------------------------------------


def test_path_graph_endpoints():
    G = path_graph(6)
    ok, seq = has_hamiltonian_path(G, 0, 5)
    assert ok and seq == [0, 1, 2, 3, 4, 5]
    assert has_hamiltonian_path(G, 0, 3) == (False, None)


def test_k4_all_pairs():
    K = complete_graph(4)
    for u, v in itertools.combinations(range(4), 2):
        ok, seq = has_hamiltonian_path(K, u, v)
        assert ok and seq[0] == u and seq[-1] == v and is_hamiltonian_path(K, seq)


def test_petersen_paths():
    P = petersen()
    # adjacent ends would close a Hamiltonian cycle
    for v in P.neighbors(0):
        assert has_hamiltonian_path(P, 0, v) == (False, None)
    for v in range(1, 10):
        if not P.mult(0, v):
            ok, seq = has_hamiltonian_path(P, 0, v)
            assert ok and is_hamiltonian_path(P, seq) and (seq[0], seq[-1]) == (0, v)


def _paths_brute(G, u, v):
    inner = [x for x in range(G.n) if x not in (u, v)]
    return any(
        is_hamiltonian_path(G, (u,) + p + (v,)) for p in itertools.permutations(inner)
    )


def test_paths_match_brute_force():
    rng = random.Random(11)
    for _ in range(40):
        G = _random_multigraph(rng, rng.randint(3, 7))
        u, v = rng.sample(range(G.n), 2)
        ok, seq = has_hamiltonian_path(G, u, v)
        assert ok == _paths_brute(G, u, v)
        if ok:
            assert is_hamiltonian_path(G, seq) and seq[0] == u and seq[-1] == v


# -- 2-factors -----------------------------------------------------------------


def test_cycle_single_two_factor():
    tfs = enumerate_two_factors(cycle_graph(6))
    assert len(tfs) == 1 and tfs[0].component_lengths == [6]


def test_k4_two_factors_by_subset_brute_force():
    K = complete_graph(4)
    tfs = enumerate_two_factors(K)
    refs = list(K.edge_refs())
    brute = []
    for sub in itertools.combinations(refs, 4):
        deg = [0] * 4
        for r in sub:
            deg[r.u] += 1
            deg[r.v] += 1
        if deg == [2, 2, 2, 2]:
            brute.append(sorted(sub))
    assert [tf.units() for tf in tfs] == sorted(brute)
    assert all(tf.component_lengths == [4] for tf in tfs)


def test_petersen_two_factors_are_two_pentagons(P):
    tfs = enumerate_two_factors(P)
    assert len(tfs) == 6
    assert all(sorted(tf.component_lengths) == [5, 5] for tf in tfs)


def test_digons_count_as_components():
    G = MultiGraph(4, {(0, 1): 2, (2, 3): 2, (1, 2): 1, (0, 3): 1})
    lengths = sorted(tuple(sorted(tf.component_lengths)) for tf in enumerate_two_factors(G))
    assert (2, 2) in lengths


def test_limit_truncates():
    tfs = enumerate_two_factors(complete_graph(6), limit=3)
    assert len(tfs) == 3 and tfs.truncated
    assert not enumerate_two_factors(complete_graph(4)).truncated


def test_split_two_factor():
    G = build_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    tf = exists_split_two_factor(G, EdgeRef(0, 1), EdgeRef(3, 4))
    assert tf is not None and tf.component_of(EdgeRef(0, 1)) != tf.component_of(EdgeRef(3, 4))
    assert exists_split_two_factor(cycle_graph(6), EdgeRef(0, 1), EdgeRef(3, 4)) is None
    with pytest.raises(ValueError):
        exists_split_two_factor(G, EdgeRef(0, 1), EdgeRef(1, 0))
