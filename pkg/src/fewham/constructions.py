"""Generators: Petersen, gadgets, the H_G assembly, K_{3,4} expansion and the small families.

H_G is built from a gadget G (4-regular, with a marked path a-b-c-d) and a
copy G'.  One unit each of ab, bc, cd and of a'b', b'c', c'd' is deleted and
four connector paths are added::

    Pa: a -> c'  (length l+1)      Pb: b -> b'  (length l)
    Pc: c -> a'  (length l)        Pd: d -> d'  (length l+1)

At that point exactly b, c, b', c' have degree 3 and every connector
internal has degree 2.  A :class:`LadderPattern` then adds zig-zag chords
between Pa/Pb and between Pc/Pd that bring every vertex to degree 4.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .graphcore import (
    EdgeRef,
    GraphError,
    MultiGraph,
    add_edges,
    add_path,
    build_graph,
    complete_graph,
    delete_edges,
    disjoint_union,
)
from .hamilton import TwoFactor, count_hamiltonian_cycles, exists_split_two_factor

STRANDS = ("Pa", "Pb", "Pc", "Pd")
DEFAULT_PROBE = (2, 3, 4)
K34_PATHS = 12  # Hamiltonian paths of K_{3,4} between two vertices of the 4-side


class AssemblyError(GraphError):
    """A construction postcondition failed; ``details`` names the offending vertices."""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message)
        self.details = details or {}


# -- Petersen and doubled matchings -------------------------------------


def petersen() -> MultiGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return build_graph(10, outer + inner + spokes)


def perfect_matchings(G: MultiGraph) -> List[Tuple[Tuple[int, int], ...]]:
    """Perfect matchings of the underlying simple graph, in lexicographic order."""
    n = G.n
    adj = G.adjacency()
    out: List[Tuple[Tuple[int, int], ...]] = []
    used = [False] * n
    chosen: List[Tuple[int, int]] = []

    def rec() -> None:
        v = next((x for x in range(n) if not used[x]), None)
        if v is None:
            out.append(tuple(chosen))
            return
        used[v] = True
        for w in sorted(adj[v]):
            if not used[w]:
                used[w] = True
                chosen.append((v, w))
                rec()
                chosen.pop()
                used[w] = False
        used[v] = False

    rec()
    return out


def double_one_factor(G: MultiGraph, M: Sequence[Tuple[int, int]]) -> MultiGraph:
    cover = Counter()
    for u, v in M:
        if not G.mult(u, v):
            raise GraphError(f"matching edge ({u}, {v}) is not in the graph")
        cover[u] += 1
        cover[v] += 1
    missing = [v for v in range(G.n) if cover[v] == 0]
    over = sorted(v for v, k in cover.items() if k > 1)
    if missing or over:
        raise GraphError(f"not a perfect matching: uncovered {missing}, over-covered {over}")
    return add_edges(G, M)


# -- gadget specification and search ------------------------------------


@dataclass
class GadgetSpec:
    graph: MultiGraph
    a: int
    b: int
    c: int
    d: int
    two_factor: Optional[TwoFactor] = None
    source: str = ""

    @property
    def path(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def structural_problems(self) -> List[str]:
        G = self.graph
        out = []
        if len(set(self.path)) != 4:
            out.append("a, b, c, d must be distinct")
        for x, y in zip(self.path, self.path[1:]):
            if not (0 <= x < G.n and 0 <= y < G.n) or not G.mult(x, y):
                out.append(f"path edge ({x}, {y}) missing")
        return out

    def to_dict(self) -> dict:
        from .formats import multigraph_to_dict

        return {
            "graph": multigraph_to_dict(self.graph),
            "path": list(self.path),
            "two_factor": self.two_factor.to_dict() if self.two_factor else None,
            "source": self.source,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "GadgetSpec":
        from .formats import multigraph_from_dict

        G = multigraph_from_dict(obj["graph"])
        a, b, c, d = obj["path"]
        tf = None
        if obj.get("two_factor"):
            tf = TwoFactor([tuple(EdgeRef(*e) for e in comp) for comp in obj["two_factor"]["components"]])
        return cls(G, a, b, c, d, tf, obj.get("source", ""))


class GadgetSearchFailure(RuntimeError):
    def __init__(self, strategy: str, stats: Dict[str, int]):
        self.strategy = strategy
        self.stats = dict(stats)
        parts = ", ".join(f"{k}: {v}" for k, v in sorted(self.stats.items()))
        super().__init__(f"no gadget in candidate space {strategy!r}; rejections by first failing check: {parts}")


@dataclass
class GadgetSearchResult:
    strategy: str
    spec: Optional[GadgetSpec]
    stats: Dict[str, int]
    graphs_examined: int
    paths_examined: int


def directed_paths(G: MultiGraph) -> Iterator[Tuple[int, int, int, int]]:
    adj = G.adjacency()
    for a in range(G.n):
        for b in sorted(adj[a]):
            for c in sorted(adj[b]):
                if c == a:
                    continue
                for d in sorted(adj[c]):
                    if d not in (a, b):
                        yield (a, b, c, d)


def _doubled_matching_space() -> Iterator[Tuple[str, MultiGraph]]:
    P = petersen()
    for i, M in enumerate(perfect_matchings(P)):
        yield f"petersen+2M[{i}]", double_one_factor(P, M)


def _b_matchings(n: int, edges: List[Tuple[int, int]], need: List[int], top: int) -> Iterator[List[int]]:
    """Extra multiplicities x_e in 0..top with sum at v equal to need[v]."""
    x = [0] * len(edges)
    need = list(need)
    last = {}
    for i, (u, v) in enumerate(edges):
        last[u] = i
        last[v] = i

    def rec(i: int) -> Iterator[List[int]]:
        if i == len(edges):
            if not any(need):
                yield list(x)
            return
        u, v = edges[i]
        for val in range(top + 1):
            if need[u] < val or need[v] < val:
                break
            need[u] -= val
            need[v] -= val
            x[i] = val
            if all(not (last[w] == i and need[w]) for w in (u, v)):
                yield from rec(i + 1)
            need[u] += val
            need[v] += val
            x[i] = 0

    yield from rec(0)


def _subdivided_space(max_subdivisions: int = 2) -> Iterator[Tuple[str, MultiGraph]]:
    """Petersen with up to ``max_subdivisions`` edge subdivisions, degrees lifted to 4 by parallel copies.

    The first subdivided edge is fixed to (0, 1): Petersen is edge-transitive.
    """
    P = petersen()
    pe = [(u, v) for u, v, _k in P.edges()]
    for k in range(1, max_subdivisions + 1):
        for combo in itertools.combinations_with_replacement(range(len(pe)), k):
            if combo[0] != 0:
                continue
            cnt = Counter(combo)
            n = P.n
            edges: List[Tuple[int, int]] = []
            for i, (u, v) in enumerate(pe):
                chain = [u] + list(range(n, n + cnt.get(i, 0))) + [v]
                n += cnt.get(i, 0)
                edges.extend(zip(chain, chain[1:]))
            deg = Counter()
            for u, v in edges:
                deg[u] += 1
                deg[v] += 1
            need = [4 - deg[v] for v in range(n)]
            for x in _b_matchings(n, edges, need, 2):
                mult = {(min(u, v), max(u, v)): 1 + e for (u, v), e in zip(edges, x)}
                yield f"petersen-sub{list(combo)}+{x}", MultiGraph(n, mult)


CANDIDATE_SPACES = {
    "doubled-matching": _doubled_matching_space,
    "subdivided-petersen": _subdivided_space,
}


class _GadgetProbe:
    """Fast first-failure evaluation of the gadget conditions for many paths on one graph."""

    def __init__(self, G: MultiGraph):
        from .connectivity import edge_connectivity

        self.G = G
        self.regular = G.is_regular(4)
        self.ec = edge_connectivity(G)[0] if self.regular else 0
        self.ham = None
        if self.regular and self.ec >= 4:
            self.ham = count_hamiltonian_cycles(G, stop_after=1).count
        self._paths: Dict[tuple, bool] = {}
        self._graphs: Dict[tuple, Tuple[MultiGraph, Dict[int, int]]] = {}

    def graph_failure(self) -> Optional[str]:
        if not self.regular:
            return "regularity"
        if self.ec < 4:
            return "edge_connectivity"
        if self.ham:
            return "i"
        return None

    def _hp(self, bc: EdgeRef, v: Optional[int], x: int, y: int) -> bool:
        from .hamilton import has_hamiltonian_path

        key = (bc, v, min(x, y), max(x, y))
        if key not in self._paths:
            gk = (bc, v)
            if gk not in self._graphs:
                K = delete_edges(self.G, [bc])
                if v is None:
                    self._graphs[gk] = (K, {i: i for i in range(K.n)})
                else:
                    K2, keep = K.subgraph_without([v])
                    self._graphs[gk] = (K2, {o: i for i, o in enumerate(keep)})
            K, inv = self._graphs[gk]
            self._paths[key] = has_hamiltonian_path(K, inv[x], inv[y])[0]
        return self._paths[key]

    def path_failure(self, path) -> Tuple[Optional[str], Optional[TwoFactor]]:
        a, b, c, d = path
        tf = exists_split_two_factor(self.G, EdgeRef(a, b).normalized(), EdgeRef(c, d).normalized())
        if tf is None:
            return "ii", None
        bc = EdgeRef(b, c).normalized()
        for x, y in itertools.combinations(path, 2):
            if self._hp(bc, None, x, y):
                return "iii-a", tf
        for v in path:
            rest = [s for s in path if s != v]
            for x, y in itertools.combinations(rest, 2):
                if self._hp(bc, v, x, y):
                    return "iii-b", tf
        return None, tf


def search_gadgets(strategy: str = "doubled-matching", first_only: bool = True, **kwargs) -> GadgetSearchResult:
    """Scan a declared candidate space in deterministic order and tally rejections.

    Every directed path a-b-c-d is tried; a candidate is rejected at its first
    failing check, in the order regularity, edge_connectivity, i, ii, iii-a, iii-b.
    """
    from .verify import verify_conditions

    if strategy not in CANDIDATE_SPACES:
        raise ValueError(f"unknown candidate space {strategy!r}; choose from {sorted(CANDIDATE_SPACES)}")
    stats: Counter = Counter()
    found: Optional[GadgetSpec] = None
    graphs = paths = 0
    for name, G in CANDIDATE_SPACES[strategy](**kwargs):
        graphs += 1
        probe = _GadgetProbe(G)
        bad = probe.graph_failure()
        for path in directed_paths(G):
            paths += 1
            if bad:
                stats[bad] += 1
                continue
            why, tf = probe.path_failure(path)
            if why:
                stats[why] += 1
                continue
            spec = GadgetSpec(G, *path, two_factor=tf, source=f"{strategy}:{name}")
            if not verify_conditions(spec).overall:
                stats["verify_conditions"] += 1
                continue
            stats["pass"] += 1
            if found is None:
                found = spec
            if first_only:
                return GadgetSearchResult(strategy, found, dict(stats), graphs, paths)
    return GadgetSearchResult(strategy, found, dict(stats), graphs, paths)


def find_gadget(strategy: str = "doubled-matching", **kwargs) -> GadgetSpec:
    res = search_gadgets(strategy, first_only=True, **kwargs)
    if res.spec is None:
        raise GadgetSearchFailure(strategy, res.stats)
    return res.spec


def load_gadget() -> GadgetSpec:
    """The certified gadget shipped with the package (first hit of the subdivided-Petersen space)."""
    text = resources.files("fewham.data").joinpath("gadget.json").read_text()
    return GadgetSpec.from_dict(json.loads(text))


# -- ladder patterns ----------------------------------------------------


@dataclass(frozen=True)
class Addr:
    """A connector-path vertex: ``pos`` counts from the gadget-side end; negative counts from the far end."""

    strand: str
    pos: int

    def to_list(self) -> list:
        return [self.strand, self.pos]


def strand_lengths(ell: int) -> Dict[str, int]:
    return {"Pa": ell + 1, "Pb": ell, "Pc": ell, "Pd": ell + 1}


@dataclass(frozen=True)
class ZigZag:
    """Chords alternating between a long strand (length l+1) and a short one (length l).

    The spine visits long-1, short-1, long-2, ..., short-(l-1), long-l; ``start``
    is joined to long-1 and ``end`` to long-l when given.
    """

    long: str
    short: str
    start: Optional[Addr] = None
    end: Optional[Addr] = None

    def chords(self, ell: int) -> List[Tuple[Addr, Addr]]:
        out = []
        if self.start is not None:
            out.append((self.start, Addr(self.long, 1)))
        for i in range(1, ell + 1):
            if i > 1:
                out.append((Addr(self.short, i - 1), Addr(self.long, i)))
            if i < ell:
                out.append((Addr(self.long, i), Addr(self.short, i)))
        if self.end is not None:
            out.append((Addr(self.long, ell), self.end))
        return out

    def to_dict(self) -> dict:
        return {
            "long": self.long,
            "short": self.short,
            "start": self.start.to_list() if self.start else None,
            "end": self.end.to_list() if self.end else None,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "ZigZag":
        s, e = obj.get("start"), obj.get("end")
        return cls(obj["long"], obj["short"], Addr(*s) if s else None, Addr(*e) if e else None)


@dataclass(frozen=True)
class LadderPattern:
    ladders: Tuple[ZigZag, ...]
    doubled: Tuple[Tuple[Addr, Addr], ...] = ()
    min_ell: int = 2
    name: str = ""
    skip: Tuple[int, ...] = ()

    def chords(self, ell: int) -> List[Tuple[Addr, Addr]]:
        out = [ch for z in self.ladders for ch in z.chords(ell)]
        return [ch for i, ch in enumerate(out) if i not in self.skip]

    def without_chord(self, index: int) -> "LadderPattern":
        return LadderPattern(self.ladders, self.doubled, self.min_ell, self.name + f"-skip{index}", self.skip + (index,))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "min_ell": self.min_ell,
            "ladders": [z.to_dict() for z in self.ladders],
            "doubled": [[x.to_list(), y.to_list()] for x, y in self.doubled],
            "skip": list(self.skip),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "LadderPattern":
        return cls(
            tuple(ZigZag.from_dict(z) for z in obj["ladders"]),
            tuple((Addr(*x), Addr(*y)) for x, y in obj.get("doubled", [])),
            int(obj.get("min_ell", 2)),
            obj.get("name", ""),
            tuple(obj.get("skip", [])),
        )


def load_pattern() -> LadderPattern:
    text = resources.files("fewham.data").joinpath("ladder_pattern.json").read_text()
    return LadderPattern.from_dict(json.loads(text))


@dataclass(frozen=True)
class FamilyParams:
    ell: int
    pattern: LadderPattern

    def __post_init__(self):
        if self.ell < self.pattern.min_ell:
            raise ValueError(f"ell={self.ell} below the pattern minimum {self.pattern.min_ell}")


# -- H_G assembly ---------------------------------------------------------


@dataclass
class HGAssembly:
    graph: MultiGraph
    paths: Dict[str, List[int]]
    copy_offset: int
    ell: int

    def resolve(self, addr: Addr) -> int:
        seq = self.paths[addr.strand]
        if not -len(seq) <= addr.pos < len(seq):
            raise AssemblyError(f"position {addr.pos} outside strand {addr.strand} of length {len(seq) - 1}")
        return seq[addr.pos]

    def path_edges(self) -> List[EdgeRef]:
        """Edge units of Pa..Pd (copy 0 of each consecutive pair)."""
        out = []
        for name in STRANDS:
            seq = self.paths[name]
            for x, y in zip(seq, seq[1:]):
                out.append(EdgeRef(x, y).normalized())
        return out


def _path_skeleton(spec: GadgetSpec, ell: int) -> Tuple[MultiGraph, Dict[str, List[int]], int]:
    G = spec.graph
    problems = spec.structural_problems()
    if problems:
        raise AssemblyError("; ".join(problems))
    U, off = disjoint_union(G, G, tags=("G", "G'"))
    a, b, c, d = spec.path
    p = off.__getitem__
    dels = [(a, b), (b, c), (c, d), (p(a), p(b)), (p(b), p(c)), (p(c), p(d))]
    U = delete_edges(U, [EdgeRef(x, y).normalized() for x, y in dels])
    ends = {"Pa": (a, p(c)), "Pb": (b, p(b)), "Pc": (c, p(a)), "Pd": (d, p(d))}
    paths: Dict[str, List[int]] = {}
    for name in STRANDS:
        x, y = ends[name]
        U, internal = add_path(U, x, y, strand_lengths(ell)[name], tag=name)
        paths[name] = [x] + internal + [y]
    return U, paths, G.n


def deficiency(G: MultiGraph, target: int = 4) -> Dict[int, int]:
    return {v: target - d for v, d in enumerate(G.degrees()) if d != target}


def assemble_HG_detailed(spec: GadgetSpec, params: FamilyParams) -> HGAssembly:
    ell = params.ell
    if ell < 1:
        raise ValueError("ell must be >= 1")
    U, paths, off = _path_skeleton(spec, ell)
    asm = HGAssembly(U, paths, off, ell)

    # audit before ladders: b, c, b', c' at degree 3, internals at 2, all else 4
    a, b, c, d = spec.path
    expect = {b: 1, c: 1, off + b: 1, off + c: 1}
    for name in STRANDS:
        for x in paths[name][1:-1]:
            expect[x] = 2
    found = deficiency(U)
    if found != expect:
        raise AssemblyError(
            "degree audit after connector insertion failed",
            {"expected_deficiency": expect, "found_deficiency": found},
        )

    pairs = [(asm.resolve(x), asm.resolve(y)) for x, y in params.pattern.chords(ell)]
    pairs += [(asm.resolve(x), asm.resolve(y)) for x, y in params.pattern.doubled]
    for x, y in pairs:
        if x == y:
            raise AssemblyError(f"pattern chord is a loop at vertex {x}")
    H = add_edges(U, pairs)

    bad = deficiency(H)
    if bad:
        raise AssemblyError(
            "pattern leaves vertices off degree 4: "
            + ", ".join(f"{v} ({H.label(v) or 'gadget'}) degree {4 - k}" for v, k in sorted(bad.items())),
            {"deficient": sorted(v for v, k in bad.items() if k > 0), "overfull": sorted(v for v, k in bad.items() if k < 0)},
        )
    if not H.is_connected():
        raise AssemblyError("assembled graph is disconnected")
    inherited = set(U.parallel_pairs())
    declared = {tuple(sorted((asm.resolve(x), asm.resolve(y)))) for x, y in params.pattern.doubled}
    actual = set(H.parallel_pairs())
    if actual != inherited | declared:
        raise AssemblyError(
            "undeclared parallel edges",
            {"unexpected": sorted(actual - inherited - declared), "missing": sorted((inherited | declared) - actual)},
        )
    asm.graph = H
    return asm


def assemble_HG(spec: GadgetSpec, params: FamilyParams) -> MultiGraph:
    return assemble_HG_detailed(spec, params).graph


# -- ladder synthesis ------------------------------------------------------


@dataclass
class PatternTrial:
    pattern: LadderPattern
    counts: Dict[int, int]
    contained: Dict[int, int]
    failure: Optional[str] = None


@dataclass
class SynthesisReport:
    family: str
    pattern: Optional[LadderPattern]
    trials: List[PatternTrial]
    degree_rejections: int
    near_misses: Dict[str, dict]


class LadderSynthesisError(RuntimeError):
    def __init__(self, report: SynthesisReport):
        self.report = report
        super().__init__(
            f"no pattern in the {report.family!r} family qualifies "
            f"({report.degree_rejections} rejected by degree completion, {len(report.trials)} counted); "
            f"near misses: {json.dumps(report.near_misses, sort_keys=True)}"
        )


LADDERS = (("Pa", "Pb"), ("Pd", "Pc"))  # (long, short)


def _endpoints(strands: Sequence[str]) -> List[Addr]:
    return [Addr(s, p) for s in strands for p in (0, -1)]


def pattern_family(family: str = "strict") -> Iterator[LadderPattern]:
    """Candidate zig-zag patterns in deterministic order.

    ``strict``: termini are endpoints of the ladder's own two strands.
    ``widened``: termini may be any connector-path endpoint.
    In both, at most two extreme connector edges (first or last edge of a
    strand) may be declared doubled.
    """
    if family not in ("strict", "widened"):
        raise ValueError(f"unknown pattern family {family!r}")
    extreme = []
    for s in STRANDS:
        extreme.append((Addr(s, 0), Addr(s, 1)))
        extreme.append((Addr(s, -2), Addr(s, -1)))
    doubles = [()] + [(e,) for e in extreme] + list(itertools.combinations(extreme, 2))
    per_ladder = []
    for long, short in LADDERS:
        pool = _endpoints((long, short)) if family == "strict" else _endpoints(STRANDS)
        opts = [None] + pool
        per_ladder.append([ZigZag(long, short, s, e) for s in opts for e in opts])
    k = 0
    for z1 in per_ladder[0]:
        for z2 in per_ladder[1]:
            for dbl in doubles:
                k += 1
                yield LadderPattern((z1, z2), tuple(dbl), 2, f"{family}-{k}")


def _degree_ok(skel: HGAssembly, need: Dict[int, int], pattern: LadderPattern) -> Tuple[bool, int]:
    got: Counter = Counter()
    for x, y in pattern.chords(skel.ell) + list(pattern.doubled):
        u, v = skel.resolve(x), skel.resolve(y)
        if u == v:
            return False, 99
        got[u] += 1
        got[v] += 1
    off = sum(1 for v in set(need) | set(got) if got[v] != need.get(v, 0))
    return off == 0, off


def evaluate_pattern(spec: GadgetSpec, pattern: LadderPattern, probe_range: Sequence[int]) -> PatternTrial:
    """Count H_G and the cycles through every connector edge for each probe value."""
    from .frontier import count_hamiltonian_cycles_frontier

    counts, contained = {}, {}
    for ell in probe_range:
        try:
            asm = assemble_HG_detailed(spec, FamilyParams(ell, pattern))
        except AssemblyError as exc:
            return PatternTrial(pattern, counts, contained, f"assembly at ell={ell}: {exc}")
        counts[ell] = count_hamiltonian_cycles_frontier(asm.graph)
        contained[ell] = count_hamiltonian_cycles_frontier(asm.graph, forced=asm.path_edges())
    failure = None
    vals = [counts[e] for e in probe_range]
    if any(counts[e] != contained[e] for e in probe_range):
        failure = "containment"
    elif len(set(vals)) != 1:
        failure = "constancy"
    elif vals[0] <= 0:
        failure = "positivity"
    return PatternTrial(pattern, counts, contained, failure)


def synthesize_ladder_pattern(
    spec: GadgetSpec,
    probe_range: Sequence[int] = DEFAULT_PROBE,
    family: str = "strict",
    max_trials: Optional[int] = None,
) -> SynthesisReport:
    """First pattern of ``family`` that assembles, keeps every cycle on the connectors, and has a constant positive count."""
    probe = sorted(probe_range)
    if len(probe) < 3 or probe != list(range(probe[0], probe[0] + len(probe))):
        raise ValueError("probe_range must hold at least 3 consecutive values")
    if probe[0] < 2:
        raise ValueError("zig-zag patterns need ell >= 2")
    skel_graph, paths, off = _path_skeleton(spec, probe[0])
    skel = HGAssembly(skel_graph, paths, off, probe[0])
    need = deficiency(skel_graph)

    trials: List[PatternTrial] = []
    rejected = 0
    best_degree: Optional[Tuple[int, LadderPattern]] = None
    seen = set()
    for pat in pattern_family(family):
        key = (tuple(sorted((skel.resolve(x), skel.resolve(y)) for x, y in pat.chords(probe[0]))), pat.doubled)
        if key in seen:
            continue
        seen.add(key)
        ok, off_count = _degree_ok(skel, need, pat)
        if not ok:
            rejected += 1
            if best_degree is None or off_count < best_degree[0]:
                best_degree = (off_count, pat)
            continue
        trial = evaluate_pattern(spec, pat, probe)
        trials.append(trial)
        if trial.failure is None:
            return SynthesisReport(family, pat, trials, rejected, {})
        if max_trials is not None and len(trials) >= max_trials:
            break

    near: Dict[str, dict] = {}
    if best_degree is not None:
        near["degree"] = {"pattern": best_degree[1].to_dict(), "vertices_off": best_degree[0]}
    if trials:
        def frac(t: PatternTrial) -> float:
            return min((t.contained.get(e, 0) / t.counts[e]) if t.counts.get(e) else 0.0 for e in probe)

        bt = max(trials, key=frac)
        near["containment"] = {"pattern": bt.pattern.to_dict(), "counts": bt.counts, "contained": bt.contained}
    raise LadderSynthesisError(SynthesisReport(family, None, trials, rejected, near))


def parity_obstruction(spec: GadgetSpec, ell: int = 2) -> Dict[str, int]:
    """Total degree deficiency inside each ladder's strands; an odd total cannot be closed by chords within it."""
    skel_graph, paths, _off = _path_skeleton(spec, ell)
    need = deficiency(skel_graph)
    out = {}
    for long, short in LADDERS:
        verts = set(paths[long]) | set(paths[short])
        out[f"{long}/{short}"] = sum(need.get(v, 0) for v in verts)
    return out


# -- K_{3,4} expansion ----------------------------------------------------


def meredith_expand(G: MultiGraph, targets) -> MultiGraph:
    """Replace each target (degree 4) by K_{3,4}; its edge-ends go to the 4-side.

    Non-targets keep their relative order as ids ``0..``; each gadget then
    takes seven fresh ids (four-side first).  Edge-ends at a target are
    matched to the four-side in order of (far-end id, copy).
    """
    T = sorted(set(targets))
    adj = G.adjacency()
    for t in T:
        if G.degree(t) != 4:
            raise GraphError(f"expansion target {t} has degree {G.degree(t)}, expected 4")
    tset = set(T)
    keep = [v for v in range(G.n) if v not in tset]
    new_id = {v: i for i, v in enumerate(keep)}
    labels = {new_id[v]: t for v, t in G.labels.items() if v in new_id}
    nxt = len(keep)
    mult: Dict[Tuple[int, int], int] = {}
    port: Dict[Tuple[int, int, int], int] = {}
    for t in T:
        four = list(range(nxt, nxt + 4))
        three = list(range(nxt + 4, nxt + 7))
        nxt += 7
        tag = G.label(t) or str(t)
        for i, x in enumerate(four):
            labels[x] = f"K34[{tag}]:4-{i}"
        for j, z in enumerate(three):
            labels[z] = f"K34[{tag}]:3-{j}"
        for x in four:
            for z in three:
                mult[(x, z)] = 1
        ends = [(w, c) for w in sorted(adj[t]) for c in range(adj[t][w])]
        for i, (w, c) in enumerate(ends):
            port[(t, w, c)] = four[i]
    for u, v, c in G.edge_refs():
        x = port[(u, v, c)] if u in tset else new_id[u]
        y = port[(v, u, c)] if v in tset else new_id[v]
        key = (min(x, y), max(x, y))
        mult[key] = mult.get(key, 0) + 1
    return MultiGraph(nxt, mult, labels)


def double_edge_ends(G: MultiGraph) -> List[int]:
    return sorted({v for e in G.parallel_pairs() for v in e})


def meredith_graph(matching_index: int = 0) -> MultiGraph:
    """All ten vertices of Petersen-with-a-doubled-matching expanded: the 70-vertex graph."""
    P = petersen()
    G = double_one_factor(P, perfect_matchings(P)[matching_index])
    return meredith_expand(G, range(G.n))


@dataclass
class FinalizedMember:
    graph: MultiGraph
    hg: MultiGraph
    expanded: List[int]
    report: "object" = None


def finalize_family_member(spec: GadgetSpec, params: FamilyParams, count: bool = True) -> FinalizedMember:
    """Assemble H_G, expand both ends of every double edge, then certify the result.

    The report holds regularity, simplicity, vertex connectivity, and (with
    ``count``) the cycle count by frontier DP checked against
    ``count(H_G) * 12**k`` where ``k`` is the number of expanded vertices.
    """
    from .verify import certify_member

    H = assemble_HG(spec, params)
    targets = double_edge_ends(H)
    F = meredith_expand(H, targets)
    member = FinalizedMember(F, H, targets)
    member.report = certify_member(member, count=count)
    return member


# -- triangle family and the figure-gated family ---------------------------


def triangle_replace(G: MultiGraph, v: int) -> MultiGraph:
    adj = G.adjacency()
    if G.degree(v) != 3:
        raise GraphError(f"vertex {v} has degree {G.degree(v)}, expected 3")
    if len(adj[v]) != 3:
        raise GraphError(f"vertex {v} has a parallel edge; neighbourhood must be simple")
    nbrs = sorted(adj[v])
    keep = [x for x in range(G.n) if x != v]
    new_id = {x: i for i, x in enumerate(keep)}
    mult = {}
    for (x, y), k in G.multiplicities().items():
        if v not in (x, y):
            mult[(new_id[x], new_id[y])] = k
    tri = [G.n - 1, G.n, G.n + 1]
    for i in range(3):
        mult[(min(tri[i], tri[(i + 1) % 3]), max(tri[i], tri[(i + 1) % 3]))] = 1
        w = new_id[nbrs[i]]
        mult[(min(w, tri[i]), max(w, tri[i]))] = 1
    labels = {new_id[x]: t for x, t in G.labels.items() if x != v}
    return MultiGraph(G.n + 2, mult, labels)


def triangle_family(k: int) -> MultiGraph:
    if k < 0:
        raise ValueError("k must be >= 0")
    G = complete_graph(4)
    for _ in range(k):
        adj = G.adjacency()
        v = next(x for x in range(G.n) if G.degree(x) == 3 and len(adj[x]) == 3)
        G = triangle_replace(G, v)
    return G


class FigureTranscriptionRequired(RuntimeError):
    pass


@dataclass
class BlockTemplate:
    """One repeating block with ``inputs`` and ``outputs`` port lists; block i's outputs join block i+1's inputs."""

    block: MultiGraph
    inputs: List[int]
    outputs: List[int]
    m_min: int = 2

    @classmethod
    def from_dict(cls, obj: dict) -> "BlockTemplate":
        from .formats import multigraph_from_dict

        return cls(multigraph_from_dict(obj["block"]), list(obj["inputs"]), list(obj["outputs"]), int(obj.get("m_min", 2)))


def fig1_family(m: int, template: Optional[BlockTemplate] = None) -> MultiGraph:
    if template is None:
        raise FigureTranscriptionRequired(
            "figure transcription required: supply a BlockTemplate describing one block and its ports"
        )
    if m < template.m_min:
        raise ValueError(f"m must be >= {template.m_min}")
    if len(template.inputs) != len(template.outputs):
        raise GraphError("block must have as many inputs as outputs")
    G = MultiGraph(0)
    offs = []
    for _ in range(m):
        offs.append(G.n)
        G, _ = disjoint_union(G, template.block)
    pairs = []
    for i in range(m):
        j = (i + 1) % m
        for o, p in zip(template.outputs, template.inputs):
            pairs.append((offs[i] + o, offs[j] + p))
    G = add_edges(G, pairs)
    if not G.is_regular(4):
        raise AssemblyError("chained blocks are not 4-regular", {"deficiency": deficiency(G)})
    return G
