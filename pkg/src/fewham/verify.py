"""Gadget condition checks, family certification and the background property suites."""

from __future__ import annotations

import itertools
import json
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .connectivity import edge_connectivity, vertex_connectivity
from .formats import write_graph6
from .frontier import count_hamiltonian_cycles_frontier
from .graphcore import EdgeRef, MultiGraph, build_graph, delete_edges
from .hamilton import (
    Budget,
    count_hamiltonian_cycles,
    cycle_vertex_sequence,
    exists_split_two_factor,
    has_hamiltonian_path,
)


@dataclass
class CheckResult:
    passed: bool
    witness: Any = None
    elapsed: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        out = {"pass": self.passed, "witness": self.witness}
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass
class CertificationReport:
    checks: Dict[str, CheckResult] = field(default_factory=dict)
    constants: Dict[str, Any] = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks.values())

    def failed(self) -> List[str]:
        return [k for k, c in self.checks.items() if not c.passed]

    def add(self, name: str, passed: bool, witness: Any = None, elapsed: float = 0.0) -> CheckResult:
        res = CheckResult(bool(passed), witness, elapsed)
        self.checks[name] = res
        return res

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "overall": self.overall,
            "checks": {k: self.checks[k].to_dict(timing) for k in sorted(self.checks)},
            "constants": self.constants,
        }

    def to_json(self, timing: bool = False) -> str:
        """Canonical serialization; timings are left out unless asked for."""
        return json.dumps(self.to_dict(timing), sort_keys=True, default=str)


class _Timer:
    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.dt = time.monotonic() - self.t0


# -- gadget conditions -------------------------------------------------------


def _valid_split_certificate(G: MultiGraph, tf, e: EdgeRef, f: EdgeRef) -> Optional[str]:
    deg = Counter()
    units = tf.units()
    if len(set(units)) != len(units):
        return "certificate repeats an edge unit"
    for r in units:
        if not G.has_edge(r):
            return f"certificate edge {tuple(r)} not in graph"
        deg[r.u] += 1
        deg[r.v] += 1
    off = [v for v in range(G.n) if deg[v] != 2]
    if off:
        return f"certificate degree != 2 at {off}"
    if len(tf.components) != 2:
        return f"certificate has {len(tf.components)} components"

    def side(pair):
        hits = [i for i, comp in enumerate(tf.components) if any({r.u, r.v} == pair for r in comp)]
        return hits

    se, sf = side({e.u, e.v}), side({f.u, f.v})
    if not se or not sf or set(se) & set(sf):
        return "certificate does not separate ab and cd"
    return None


def verify_conditions(spec) -> CertificationReport:
    """Run every gadget check; each failing check carries a witness."""
    rep = CertificationReport()
    G = spec.graph
    problems = spec.structural_problems()
    if problems:
        rep.add("structure", False, problems)
        return rep
    a, b, c, d = spec.path

    with _Timer() as t:
        off = [(v, dg) for v, dg in enumerate(G.degrees()) if dg != 4]
    rep.add("regularity", not off, {"vertex": off[0][0], "degree": off[0][1]} if off else None, t.dt)

    with _Timer() as t:
        ec, cut = edge_connectivity(G)
    rep.add("edge_connectivity", ec >= 4, {"value": ec, "cut": [list(r) for r in cut]} if ec < 4 else {"value": ec}, t.dt)

    with _Timer() as t:
        hr = count_hamiltonian_cycles(G, retain=True, stop_after=1)
    wit = {"cycle": cycle_vertex_sequence(hr.cycles[0])} if hr.count else None
    rep.add("i", hr.count == 0, wit, t.dt)

    ab, cd = EdgeRef(a, b).normalized(), EdgeRef(c, d).normalized()
    with _Timer() as t:
        tf = exists_split_two_factor(G, ab, cd)
        why = None
        if tf is None:
            why = "no 2-factor with two cycles separating ab and cd"
        elif spec.two_factor is not None:
            why = _valid_split_certificate(G, spec.two_factor, ab, cd)
    wit = {"reason": why} if why else {"two_factor": tf.to_dict()}
    rep.add("ii", why is None, wit, t.dt)

    bc = EdgeRef(b, c).normalized()
    K = delete_edges(G, [bc])
    X = spec.path
    with _Timer() as t:
        bad = None
        for x, y in itertools.combinations(X, 2):
            ok, path = has_hamiltonian_path(K, x, y)
            if ok:
                bad = {"pair": [x, y], "path": path}
                break
    rep.add("iii-a", bad is None, bad, t.dt)

    with _Timer() as t:
        bad = None
        for v in X:
            K2, keep = K.subgraph_without([v])
            inv = {o: i for i, o in enumerate(keep)}
            for x, y in itertools.combinations([s for s in X if s != v], 2):
                ok, path = has_hamiltonian_path(K2, inv[x], inv[y])
                if ok:
                    bad = {"removed": v, "pair": [x, y], "path": [keep[i] for i in path]}
                    break
            if bad:
                break
    rep.add("iii-b", bad is None, bad, t.dt)
    return rep


# -- family certification ------------------------------------------------------


def certify_member(member, count: bool = True) -> CertificationReport:
    """Checks on one finalized graph: simple, 4-regular, vertex connectivity 4, and its count."""
    rep = CertificationReport()
    F = member.graph
    rep.add("simple", F.is_simple(), None if F.is_simple() else {"parallel": F.parallel_pairs()[:5]})
    off = [(v, dg) for v, dg in enumerate(F.degrees()) if dg != 4]
    rep.add("regular4", not off, {"vertex": off[0][0], "degree": off[0][1]} if off else None)
    if F.is_simple():
        with _Timer() as t:
            vc, vcut = vertex_connectivity(F)
        rep.add("vertex_connectivity", vc == 4, {"value": vc, "cut": vcut}, t.dt)
    else:
        rep.add("vertex_connectivity", False, {"reason": "graph not simple"})
    if count:
        with _Timer() as t:
            c_final = count_hamiltonian_cycles_frontier(F)
            c_hg = count_hamiltonian_cycles_frontier(member.hg)
        k = len(member.expanded)
        rep.constants = {"c_final": c_final, "c_hg": c_hg, "expanded": k}
        rep.add("count_positive", c_final > 0, {"count": c_final}, t.dt)
        rep.add(
            "expansion_identity",
            c_final == c_hg * 12**k,
            {"count": c_final, "hg_count": c_hg, "expanded": k},
        )
    return rep


def _contains_all(cycle, pairs) -> bool:
    have = {(r.u, r.v) for r in cycle}
    return all(p in have for p in pairs)


def certify_family(
    spec,
    pattern,
    ell_set: Sequence[int],
    workers: int = 1,
    enumerate_cycles: bool = True,
    budget: Optional[Budget] = None,
) -> CertificationReport:
    """Assemble, count and finalize for every ``ell``; both count sequences must be constant and positive.

    H_G counts come from two routes: the backtracking enumerator (which also
    checks that each listed cycle runs along all four connector paths) and the
    frontier DP with the connector edges forced.
    """
    from .constructions import AssemblyError, FamilyParams, assemble_HG_detailed, double_edge_ends, meredith_expand

    ells = sorted(set(ell_set))
    if len(ells) < 2:
        raise ValueError("certify_family needs at least two ell values to attest constancy")
    rep = CertificationReport()
    c_hg: Dict[int, int] = {}
    c_fin: Dict[int, int] = {}
    for ell in ells:
        tag = f"[ell={ell}]"
        try:
            asm = assemble_HG_detailed(spec, FamilyParams(ell, pattern))
        except (AssemblyError, ValueError) as exc:
            rep.add("assembly" + tag, False, {"error": str(exc), **getattr(exc, "details", {})})
            continue
        rep.add("assembly" + tag, True, {"n": asm.graph.n})
        H = asm.graph
        pairs = {(r.u, r.v) for r in asm.path_edges()}

        with _Timer() as t:
            total = count_hamiltonian_cycles_frontier(H)
            along = count_hamiltonian_cycles_frontier(H, forced=asm.path_edges())
            wit = {"frontier_count": total, "frontier_with_connectors": along}
            ok = total == along
            if enumerate_cycles:
                hr = count_hamiltonian_cycles(H, retain=True, workers=workers, budget=budget)
                strays = [cycle_vertex_sequence(cyc) for cyc in hr.cycles if not _contains_all(cyc, pairs)]
                wit.update({"enumerated": hr.count, "exact": hr.exact, "nodes_expanded": hr.nodes_expanded})
                if strays:
                    wit["stray_cycle"] = strays[0]
                ok = ok and hr.exact and hr.count == total and not strays
        rep.add("hg_count_and_containment" + tag, ok, wit, t.dt)
        c_hg[ell] = total

        targets = double_edge_ends(H)
        F = meredith_expand(H, targets)
        sub = certify_member(_Member(F, H, targets))
        for name, res in sub.checks.items():
            rep.checks[f"final_{name}{tag}"] = res
        c_fin[ell] = sub.constants["c_final"]

    def constancy(name: str, vals: Dict[int, int]) -> None:
        distinct = sorted(set(vals.values()))
        ok = len(vals) == len(ells) and len(distinct) == 1 and distinct[0] > 0
        rep.add(name, ok, None if ok else {"counts": {str(k): v for k, v in vals.items()}})

    constancy("hg_constancy", c_hg)
    constancy("final_constancy", c_fin)
    rep.constants = {
        "hg": {str(k): v for k, v in c_hg.items()},
        "final": {str(k): v for k, v in c_fin.items()},
    }
    return rep


@dataclass
class _Member:
    graph: MultiGraph
    hg: MultiGraph
    expanded: List[int]


# -- property suites -----------------------------------------------------------


def random_regular_graph(n: int, d: int, rng: random.Random, connected: bool = True, max_tries: int = 100000) -> MultiGraph:
    """Uniform simple d-regular graph by the pairing model with rejection."""
    if (n * d) % 2 or d >= n:
        raise ValueError(f"no simple {d}-regular graph on {n} vertices")
    for _ in range(max_tries):
        points = [v for v in range(n) for _ in range(d)]
        rng.shuffle(points)
        pairs = list(zip(points[::2], points[1::2]))
        keys = {(min(u, v), max(u, v)) for u, v in pairs}
        if any(u == v for u, v in pairs) or len(keys) != len(pairs):
            continue
        G = build_graph(n, pairs)
        if connected and not G.is_connected():
            continue
        return G
    raise RuntimeError(f"pairing model did not produce a simple {d}-regular graph on {n} vertices")


def default_corpus(seed: int = 2024, cubic: int = 50, cubic_max_n: int = 16, quintic: int = 20, quintic_max_n: int = 14):
    rng = random.Random(seed)
    cubic_ns = list(range(4, cubic_max_n + 1, 2))
    quintic_ns = list(range(6, quintic_max_n + 1, 2))
    out = [random_regular_graph(cubic_ns[i % len(cubic_ns)], 3, rng) for i in range(cubic)]
    out += [random_regular_graph(quintic_ns[i % len(quintic_ns)], 5, rng) for i in range(quintic)]
    return out


def smith_parity(G: MultiGraph) -> Optional[dict]:
    """Per-edge cycle counts of a cubic graph; returns a violation witness or None."""
    hr = count_hamiltonian_cycles(G, retain=True)
    per = Counter()
    for cyc in hr.cycles:
        for r in cyc:
            per[(r.u, r.v)] += 1
    for u, v, _k in G.edges():
        if per[(u, v)] % 2:
            return {"graph6": write_graph6(G).decode(), "edge": [u, v], "through": per[(u, v)]}
    return None


def property_suite(corpus: Optional[Sequence[MultiGraph]] = None, seed: int = 2024, suites=("smith", "thomason")) -> CertificationReport:
    """Smith parity on cubic members and the count != 1 consequence on all-odd-degree members."""
    if corpus is None:
        corpus = default_corpus(seed)
    rep = CertificationReport()
    if "smith" in suites:
        with _Timer() as t:
            cubic = [G for G in corpus if G.is_simple() and G.is_regular(3)]
            bad = [w for w in (smith_parity(G) for G in cubic) if w]
        rep.add("smith_parity", not bad, {"checked": len(cubic), "violations": bad}, t.dt)
    if "thomason" in suites:
        with _Timer() as t:
            odd = [G for G in corpus if all(dg % 2 for dg in G.degrees())]
            bad = []
            ham = 0
            for G in odd:
                c = count_hamiltonian_cycles(G, stop_after=2).count
                if c:
                    ham += 1
                if c == 1:
                    bad.append({"graph6": write_graph6(G).decode() if G.is_simple() else None})
        rep.add("thomason", not bad, {"checked": len(odd), "hamiltonian": ham, "violations": bad}, t.dt)
    return rep
