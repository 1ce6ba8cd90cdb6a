import itertools
import json

import pytest

from fewham.connectivity import vertex_connectivity
from fewham.constructions import (
    Addr,
    AssemblyError,
    FamilyParams,
    FigureTranscriptionRequired,
    GadgetSearchFailure,
    GadgetSpec,
    LadderPattern,
    LadderSynthesisError,
    assemble_HG,
    assemble_HG_detailed,
    double_edge_ends,
    double_one_factor,
    find_gadget,
    fig1_family,
    meredith_expand,
    meredith_graph,
    parity_obstruction,
    pattern_family,
    perfect_matchings,
    search_gadgets,
    strand_lengths,
    synthesize_ladder_pattern,
    triangle_family,
    triangle_replace,
)
from fewham.graphcore import GraphError, MultiGraph, complete_bipartite, complete_graph
from fewham.hamilton import count_hamiltonian_cycles, is_hamiltonian_path


def test_petersen_facts(P):
    assert P.n == 10 and P.edge_units() == 15 and P.is_regular(3)
    # girth 5: no triangles or 4-cycles
    adj = P.adjacency()
    for u, v in itertools.combinations(range(10), 2):
        common = set(adj[u]) & set(adj[v])
        assert len(common) <= (0 if v in adj[u] else 1)


def test_petersen_has_six_matchings(P):
    Ms = perfect_matchings(P)
    assert len(Ms) == 6
    for M in Ms:
        assert sorted(x for e in M for x in e) == list(range(10))
        assert double_one_factor(P, M).is_regular(4)


def test_double_one_factor_errors(P):
    with pytest.raises(GraphError, match="not in the graph"):
        double_one_factor(P, [(0, 2)])
    with pytest.raises(GraphError, match="uncovered"):
        double_one_factor(P, [(0, 1)])


def test_k34_between_four_side_ports_has_twelve_paths():
    K = complete_bipartite(4, 3)
    for x, y in itertools.combinations(range(4), 2):
        inner = [v for v in range(7) if v not in (x, y)]
        paths = sum(is_hamiltonian_path(K, (x,) + p + (y,)) for p in itertools.permutations(inner))
        assert paths == 12


def test_meredith_graph():
    M = meredith_graph()
    assert M.n == 70 and M.is_simple() and M.is_regular(4)
    assert vertex_connectivity(M)[0] == 4


def test_expand_single_vertex_scales_count():
    G = double_one_factor(complete_graph(4), [(0, 1), (2, 3)])
    base = count_hamiltonian_cycles(G).count
    E = meredith_expand(G, [0])
    assert E.n == 10 and E.degree(E.n - 1) == 4
    assert count_hamiltonian_cycles(E).count == 12 * base


def test_expand_rejects_wrong_degree():
    with pytest.raises(GraphError, match="degree 3"):
        meredith_expand(complete_graph(4), [0])


def test_triangle_family():
    for k in range(4):
        T = triangle_family(k)
        assert T.n == 4 + 2 * k and T.is_regular(3) and T.is_simple()
    with pytest.raises(GraphError):
        triangle_replace(MultiGraph(2, {(0, 1): 3}), 0)


def test_fig1_needs_template():
    with pytest.raises(FigureTranscriptionRequired, match="figure transcription required"):
        fig1_family(3)


# -- gadget --------------------------------------------------------------------


def test_default_space_has_no_gadget():
    res = search_gadgets("doubled-matching", first_only=False)
    assert res.spec is None
    assert res.graphs_examined == 6 and res.paths_examined == 720
    assert res.stats == {"iii-a": 720}
    with pytest.raises(GadgetSearchFailure, match="iii-a: 720"):
        find_gadget("doubled-matching")


def test_unknown_space():
    with pytest.raises(ValueError):
        search_gadgets("anything")


def test_subdivided_space_finds_shipped_gadget(gadget):
    spec = find_gadget("subdivided-petersen")
    assert spec.path == gadget.path == (10, 1, 2, 11)
    assert spec.graph == gadget.graph
    assert spec.graph.n == 12 and spec.graph.is_regular(4)


def test_gadget_json_round_trip(gadget):
    again = GadgetSpec.from_dict(json.loads(json.dumps(gadget.to_dict())))
    assert again.graph == gadget.graph and again.path == gadget.path
    assert again.two_factor.component_lengths == gadget.two_factor.component_lengths


def test_structural_problems(gadget):
    bad = GadgetSpec(gadget.graph, 0, 0, 1, 2)
    assert "distinct" in bad.structural_problems()[0]
    with pytest.raises(AssemblyError):
        assemble_HG(bad, FamilyParams(2, LadderPattern(())))


# -- H_G -------------------------------------------------------------------------


@pytest.mark.parametrize("ell", [2, 3, 4, 5])
def test_hg_vertex_count_and_regularity(gadget, pattern, ell):
    H = assemble_HG(gadget, FamilyParams(ell, pattern))
    extra = sum(strand_lengths(ell).values()) - 4
    assert H.n == 2 * gadget.graph.n + extra == 22 + 4 * ell
    assert H.is_regular(4) and H.is_connected()


def test_hg_paths_join_the_right_ends(gadget, pattern):
    asm = assemble_HG_detailed(gadget, FamilyParams(3, pattern))
    a, b, c, d = gadget.path
    o = asm.copy_offset
    ends = {k: (v[0], v[-1]) for k, v in asm.paths.items()}
    assert ends == {"Pa": (a, o + c), "Pb": (b, o + b), "Pc": (c, o + a), "Pd": (d, o + d)}
    assert [len(asm.paths[s]) - 1 for s in ("Pa", "Pb", "Pc", "Pd")] == [4, 3, 3, 4]
    assert len(asm.path_edges()) == 14


def test_dropped_chord_names_deficient_vertices(gadget, pattern):
    broken = pattern.without_chord(0)
    with pytest.raises(AssemblyError, match="degree 3") as info:
        assemble_HG(gadget, FamilyParams(2, broken))
    assert len(info.value.details["deficient"]) == 2


def test_ell_below_pattern_minimum(pattern):
    with pytest.raises(ValueError):
        FamilyParams(1, pattern)


def test_pattern_json_round_trip(pattern):
    assert LadderPattern.from_dict(json.loads(json.dumps(pattern.to_dict()))) == pattern


def test_position_outside_strand(gadget, pattern):
    asm = assemble_HG_detailed(gadget, FamilyParams(2, pattern))
    with pytest.raises(AssemblyError, match="outside"):
        asm.resolve(Addr("Pb", 5))


# -- ladder synthesis --------------------------------------------------------------


def test_parity_blocks_strict_family(gadget):
    par = parity_obstruction(gadget)
    assert par == {"Pa/Pb": 9, "Pd/Pc": 7}
    assert all(v % 2 for v in par.values())
    with pytest.raises(LadderSynthesisError) as info:
        synthesize_ladder_pattern(gadget, family="strict")
    rep = info.value.report
    assert rep.trials == [] and rep.degree_rejections > 0
    assert rep.near_misses["degree"]["vertices_off"] >= 1


def test_widened_family_recovers_shipped_pattern(gadget, pattern):
    rep = synthesize_ladder_pattern(gadget, family="widened")
    assert rep.pattern.ladders == pattern.ladders
    assert rep.pattern.doubled == pattern.doubled
    final = rep.trials[-1]
    assert final.failure is None
    assert final.counts == final.contained == {2: 5184, 3: 5184, 4: 5184}


def test_probe_range_validation(gadget):
    with pytest.raises(ValueError):
        synthesize_ladder_pattern(gadget, probe_range=(2, 3))
    with pytest.raises(ValueError):
        synthesize_ladder_pattern(gadget, probe_range=(2, 4, 5))
    with pytest.raises(ValueError):
        next(pattern_family("loose"))


def test_double_edge_ends(gadget, pattern):
    H = assemble_HG(gadget, FamilyParams(2, pattern))
    ends = double_edge_ends(H)
    assert len(ends) == 20
    E = meredith_expand(H, ends)
    assert E.n == H.n + 6 * 20 and E.is_simple() and E.is_regular(4)
