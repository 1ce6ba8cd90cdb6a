"""Hamiltonian cycles, Hamiltonian paths and 2-factors of small multigraphs.

Cycles are edge multisets: two parallel edges between consecutive vertices
give two different cycles, and a cycle equals its reversal.

The backtracking engine branches on the edge units at the vertex with the
least slack and propagates four rules after every decision:

* a vertex that can only reach degree 2 by taking all its open units takes them;
* a vertex of degree 2 drops its remaining units;
* a unit joining the two ends of one partial path is dropped unless it
  closes a Hamiltonian cycle;
* the chosen-or-open subgraph must stay connected.

For counting alone on graphs with astronomically many cycles, use
``method="frontier"`` (see :mod:`fewham.frontier`).
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .frontier import count_hamiltonian_cycles_frontier
from .graphcore import EdgeRef, GraphError, MultiGraph, add_edges, disjoint_union

Cycle = Tuple[EdgeRef, ...]

SPLIT_DEPTH = 3
BRUTE_FORCE_MAX_N = 11


@dataclass(frozen=True)
class Budget:
    """Search limits. Nodes are checked first so CI runs are machine independent."""

    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None


@dataclass
class HamiltonReport:
    count: int
    cycles: Optional[List[Cycle]] = None
    nodes_expanded: int = 0
    budget_exhausted: bool = False
    stopped_early: bool = False
    elapsed: float = 0.0
    method: str = "backtrack"

    @property
    def exact(self) -> bool:
        return not (self.budget_exhausted or self.stopped_early)


@dataclass
class TwoFactor:
    components: List[Tuple[EdgeRef, ...]]
    component_lengths: List[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.component_lengths:
            self.component_lengths = [len(c) for c in self.components]

    def units(self) -> List[EdgeRef]:
        return sorted(e for comp in self.components for e in comp)

    def component_of(self, ref: EdgeRef) -> Optional[int]:
        ref = EdgeRef(*ref).normalized()
        for i, comp in enumerate(self.components):
            if ref in comp:
                return i
        return None

    def to_dict(self) -> dict:
        return {"components": [[list(e) for e in comp] for comp in self.components]}


class TwoFactorList(list):
    """List of :class:`TwoFactor` with a ``truncated`` flag set when a limit cut enumeration short."""

    truncated: bool = False


# -- backtracking engine ---------------------------------------------------


class _BudgetHit(Exception):
    pass


class _StopSearch(Exception):
    pass


class _Engine:
    def __init__(self, G: MultiGraph, forced: Sequence[EdgeRef] = (), forbidden: Sequence[EdgeRef] = ()):
        n = G.n
        self.n = n
        self.units: List[EdgeRef] = list(G.edge_refs())
        m = len(self.units)
        self.uu = [r.u for r in self.units]
        self.vv = [r.v for r in self.units]
        self.inc: List[List[int]] = [[] for _ in range(n)]
        self.pair: Dict[Tuple[int, int], List[int]] = {}
        for i, (u, v, _c) in enumerate(self.units):
            self.inc[u].append(i)
            self.inc[v].append(i)
            self.pair.setdefault((u, v), []).append(i)
        self.index = {r: i for i, r in enumerate(self.units)}
        self.status = [0] * m  # 0 open, 1 chosen, -1 dropped
        self.deg = [0] * n
        self.avail = [len(x) for x in self.inc]
        self.end = list(range(n))
        self.n_in = 0
        self.trail: List[tuple] = []
        self.nodes = 0
        self.count = 0
        self.cycles: List[Cycle] = []
        self.retain = False
        self.node_cap: Optional[int] = None
        self.deadline: Optional[float] = None
        self.stop_after: Optional[int] = None
        self.ok = True
        ops = []
        for ref in forbidden:
            ops.append((False, self._lookup(ref)))
        for ref in forced:
            ops.append((True, self._lookup(ref)))
        if n < 3 or not self._propagate(ops) or not self._connected():
            self.ok = False

    def _lookup(self, ref) -> int:
        ref = EdgeRef(*ref).normalized()
        if ref not in self.index:
            raise GraphError(f"edge {tuple(ref)} not in graph")
        return self.index[ref]

    # state changes, all recorded on the trail

    def _set_end(self, x: int, y: int) -> None:
        self.trail.append(("e", x, self.end[x]))
        self.end[x] = y

    def _propagate(self, ops: List[Tuple[bool, int]]) -> bool:
        status, deg, avail, end, inc = self.status, self.deg, self.avail, self.end, self.inc
        n = self.n
        work = list(reversed(ops))
        while work:
            take, e = work.pop()
            st = status[e]
            if take:
                if st == 1:
                    continue
                if st == -1:
                    return False
                u, v = self.uu[e], self.vv[e]
                if deg[u] >= 2 or deg[v] >= 2:
                    return False
                closing = end[u] == v
                if closing and self.n_in != n - 1:
                    return False
                status[e] = 1
                deg[u] += 1
                deg[v] += 1
                avail[u] -= 1
                avail[v] -= 1
                self.n_in += 1
                self.trail.append(("s", e))
                if not closing:
                    eu, ev = end[u], end[v]
                    self._set_end(eu, ev)
                    self._set_end(ev, eu)
                    if self.n_in < n - 1:
                        key = (eu, ev) if eu < ev else (ev, eu)
                        for f in self.pair.get(key, ()):
                            if status[f] == 0:
                                work.append((False, f))
                for x in (u, v):
                    if deg[x] == 2:
                        for f in inc[x]:
                            if status[f] == 0:
                                work.append((False, f))
            else:
                if st == -1:
                    continue
                if st == 1:
                    return False
                u, v = self.uu[e], self.vv[e]
                status[e] = -1
                avail[u] -= 1
                avail[v] -= 1
                self.trail.append(("s", e))
                for x in (u, v):
                    have = deg[x] + avail[x]
                    if have < 2:
                        return False
                    if have == 2 and avail[x]:
                        for f in inc[x]:
                            if status[f] == 0:
                                work.append((True, f))
        return True

    def _undo(self, mark: int) -> None:
        trail = self.trail
        while len(trail) > mark:
            rec = trail.pop()
            if rec[0] == "e":
                self.end[rec[1]] = rec[2]
                continue
            e = rec[1]
            u, v = self.uu[e], self.vv[e]
            if self.status[e] == 1:
                self.deg[u] -= 1
                self.deg[v] -= 1
                self.n_in -= 1
            self.avail[u] += 1
            self.avail[v] += 1
            self.status[e] = 0

    def _connected(self) -> bool:
        n = self.n
        if n == 0:
            return True
        seen = [False] * n
        seen[0] = True
        stack = [0]
        reached = 1
        status, inc, uu, vv = self.status, self.inc, self.uu, self.vv
        while stack:
            x = stack.pop()
            for e in inc[x]:
                if status[e] >= 0:
                    y = vv[e] if uu[e] == x else uu[e]
                    if not seen[y]:
                        seen[y] = True
                        reached += 1
                        stack.append(y)
        return reached == n

    def _branch_vertex(self) -> int:
        best, best_key = -1, None
        deg, avail = self.deg, self.avail
        for v in range(self.n):
            if deg[v] < 2:
                key = avail[v] - (2 - deg[v])
                if best_key is None or key < best_key:
                    best, best_key = v, key
                    if key == 0:
                        break
        return best

    def _branches(self) -> Tuple[int, List[List[Tuple[bool, int]]]]:
        v = self._branch_vertex()
        opened = [e for e in self.inc[v] if self.status[e] == 0]
        need = 2 - self.deg[v]
        out = []
        for i in range(len(opened) - need + 1):
            out.append([(False, opened[j]) for j in range(i)] + [(True, opened[i])])
        return v, out

    def _record(self) -> None:
        self.count += 1
        if self.retain:
            self.cycles.append(tuple(self.units[e] for e, s in enumerate(self.status) if s == 1))
        if self.stop_after is not None and self.count >= self.stop_after:
            raise _StopSearch

    def _tick(self) -> None:
        self.nodes += 1
        if self.node_cap is not None and self.nodes > self.node_cap:
            raise _BudgetHit
        if self.deadline is not None and (self.nodes & 255) == 0 and time.monotonic() > self.deadline:
            raise _BudgetHit

    def search(self) -> None:
        self._tick()
        if self.n_in == self.n:
            self._record()
            return
        _v, branches = self._branches()
        for ops in branches:
            mark = len(self.trail)
            if self._propagate(ops) and (self.n_in == self.n or self._connected()):
                self.search()
            self._undo(mark)

    def split(self, depth: int, prefix: Tuple[int, ...], tasks: List[Tuple[int, ...]]) -> None:
        """Collect branch-index prefixes of every live node at ``depth``."""
        self._tick()
        if self.n_in == self.n:
            self._record()
            return
        if depth == 0:
            tasks.append(prefix)
            return
        _v, branches = self._branches()
        for i, ops in enumerate(branches):
            mark = len(self.trail)
            if self._propagate(ops) and (self.n_in == self.n or self._connected()):
                self.split(depth - 1, prefix + (i,), tasks)
            self._undo(mark)

    def replay(self, prefix: Sequence[int]) -> bool:
        for i in prefix:
            _v, branches = self._branches()
            if not self._propagate(branches[i]):
                return False
        return True


def _run_task(args) -> Tuple[int, List[Cycle], int, bool, bool]:
    G, forced, forbidden, prefix, retain, node_cap, deadline, stop_after = args
    eng = _Engine(G, forced, forbidden)
    eng.retain = retain
    eng.node_cap = node_cap
    eng.deadline = deadline
    eng.stop_after = stop_after
    exhausted = stopped = False
    if eng.ok and eng.replay(prefix):
        try:
            # the replayed node was already counted while splitting
            eng.nodes -= 1
            eng.search()
        except _BudgetHit:
            exhausted = True
        except _StopSearch:
            stopped = True
    return eng.count, eng.cycles, max(eng.nodes, 0), exhausted, stopped


def count_hamiltonian_cycles(
    G: MultiGraph,
    budget: Optional[Budget] = None,
    retain: bool = False,
    workers: int = 1,
    forced: Sequence[EdgeRef] = (),
    forbidden: Sequence[EdgeRef] = (),
    method: str = "backtrack",
    stop_after: Optional[int] = None,
    split_depth: int = SPLIT_DEPTH,
) -> HamiltonReport:
    """Count (and optionally collect) the Hamiltonian cycles of ``G``.

    ``forced`` units must lie on every counted cycle and ``forbidden`` units on
    none.  With ``workers > 1`` the tree is cut at ``split_depth`` branch levels
    and subtrees run in separate processes; the cut does not depend on the
    worker count, so counts, node totals and sorted cycle lists are identical
    for any number of workers.  A hit budget leaves ``count`` as a lower bound.
    """
    t0 = time.monotonic()
    if method == "frontier":
        if retain:
            raise ValueError("the frontier method counts only; use method='backtrack' to retain cycles")
        c = count_hamiltonian_cycles_frontier(G, forced=forced, forbidden=forbidden)
        return HamiltonReport(count=c, elapsed=time.monotonic() - t0, method="frontier")
    if method != "backtrack":
        raise ValueError(f"unknown method {method!r}")

    budget = budget or Budget()
    deadline = t0 + budget.max_seconds if budget.max_seconds is not None else None
    root = _Engine(G, forced, forbidden)
    root.retain = retain
    root.deadline = deadline
    root.node_cap = budget.max_nodes
    root.stop_after = stop_after
    report = HamiltonReport(count=0, cycles=[] if retain else None)
    if not root.ok:
        report.elapsed = time.monotonic() - t0
        return report

    tasks: List[Tuple[int, ...]] = []
    try:
        root.split(split_depth, (), tasks)
    except _BudgetHit:
        report.budget_exhausted = True
        tasks = []
    except _StopSearch:
        report.stopped_early = True
        tasks = []
    report.count = root.count
    report.nodes_expanded = root.nodes
    found = list(root.cycles)

    if tasks:
        share = None
        if budget.max_nodes is not None:
            share = max(1, (budget.max_nodes - root.nodes) // len(tasks))
        remaining_stop = None if stop_after is None else stop_after - root.count
        jobs = [
            (G, tuple(forced), tuple(forbidden), p, retain, share, deadline, remaining_stop)
            for p in tasks
        ]
        if workers > 1 and stop_after is None:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_run_task, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
        else:
            results = []
            for job in jobs:
                if remaining_stop is not None:
                    job = job[:-1] + (remaining_stop,)
                res = _run_task(job)
                results.append(res)
                if remaining_stop is not None:
                    remaining_stop -= res[0]
                    if remaining_stop <= 0:
                        break
        for c, cyc, nodes, exhausted, stopped in results:
            report.count += c
            report.nodes_expanded += nodes
            found.extend(cyc)
            report.budget_exhausted |= exhausted
            report.stopped_early |= stopped
        if stop_after is not None and report.count >= stop_after:
            report.stopped_early = True

    if retain:
        report.cycles = sorted(found)
    report.elapsed = time.monotonic() - t0
    return report


def count_through_edge(G: MultiGraph, e: EdgeRef, **kwargs) -> int:
    """Number of Hamiltonian cycles whose edge multiset contains ``e``."""
    ref = EdgeRef(*e).normalized()
    if not G.has_edge(ref):
        raise GraphError(f"edge {tuple(ref)} not in graph")
    return count_hamiltonian_cycles(G, forced=[ref], **kwargs).count


def cycle_vertex_sequence(cycle: Sequence[EdgeRef]) -> List[int]:
    """Vertex order of a cycle: lowest id first, its lower neighbour second."""
    nbrs: Dict[int, List[int]] = {}
    for u, v, _c in cycle:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    start = min(nbrs)
    seq = [start, min(nbrs[start])]
    while len(seq) < len(nbrs):
        a, b = nbrs[seq[-1]]
        seq.append(b if a == seq[-2] else a)
    return seq


def brute_force_count(G: MultiGraph) -> int:
    """Permutation oracle: orders starting at 0, halved for orientation, weighted by multiplicity."""
    n = G.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    if n < 3:
        return 0
    total = 0
    for perm in itertools.permutations(range(1, n)):
        seq = (0,) + perm
        w = 1
        for i in range(n):
            w *= G.mult(seq[i], seq[(i + 1) % n])
            if not w:
                break
        total += w
    return total // 2


# -- Hamiltonian paths -----------------------------------------------------


def has_hamiltonian_path(G: MultiGraph, u: int, v: int) -> Tuple[bool, Optional[List[int]]]:
    """Whether a spanning path with end vertices exactly ``u`` and ``v`` exists, plus a witness."""
    if u == v:
        raise ValueError("path endpoints must differ")
    H, _ = disjoint_union(G, MultiGraph(1))
    w = G.n
    H = add_edges(H, [(u, w), (v, w)])
    rep = count_hamiltonian_cycles(H, retain=True, stop_after=1, split_depth=0)
    if not rep.count:
        return False, None
    seq = cycle_vertex_sequence(rep.cycles[0])
    k = seq.index(w)
    path = seq[k + 1 :] + seq[:k]
    if path[0] != u:
        path.reverse()
    return True, path


def is_hamiltonian_path(G: MultiGraph, path: Sequence[int]) -> bool:
    return (
        len(path) == G.n
        and len(set(path)) == G.n
        and all(G.mult(x, y) for x, y in zip(path, path[1:]))
    )


# -- 2-factors -------------------------------------------------------------


def _components(units: Sequence[EdgeRef]) -> List[Tuple[EdgeRef, ...]]:
    by_vertex: Dict[int, List[EdgeRef]] = {}
    for r in units:
        by_vertex.setdefault(r.u, []).append(r)
        by_vertex.setdefault(r.v, []).append(r)
    seen_v = set()
    comps = []
    for s in sorted(by_vertex):
        if s in seen_v:
            continue
        comp = set()
        stack = [s]
        seen_v.add(s)
        while stack:
            x = stack.pop()
            for r in by_vertex[x]:
                comp.add(r)
                y = r.v if r.u == x else r.u
                if y not in seen_v:
                    seen_v.add(y)
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return comps


def iter_two_factors(G: MultiGraph, forced: Sequence[EdgeRef] = ()) -> Iterator[TwoFactor]:
    """Spanning 2-regular sub-multigraphs in lexicographic order of their sorted unit lists."""
    n = G.n
    units = list(G.edge_refs())
    m = len(units)
    must = {EdgeRef(*r).normalized() for r in forced}
    for r in must:
        if not G.has_edge(r):
            raise GraphError(f"edge {tuple(r)} not in graph")
    if n == 0:
        return
    deg = [0] * n
    rem = [0] * n
    for r in units:
        rem[r.u] += 1
        rem[r.v] += 1
    chosen: List[EdgeRef] = []

    def rec(i: int) -> Iterator[TwoFactor]:
        if i == m:
            if all(d == 2 for d in deg):
                yield TwoFactor(_components(chosen))
            return
        r = units[i]
        u, v = r.u, r.v
        rem[u] -= 1
        rem[v] -= 1
        if deg[u] < 2 and deg[v] < 2:
            deg[u] += 1
            deg[v] += 1
            chosen.append(r)
            if deg[u] + rem[u] >= 2 and deg[v] + rem[v] >= 2:
                yield from rec(i + 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
        if r not in must and deg[u] + rem[u] >= 2 and deg[v] + rem[v] >= 2:
            yield from rec(i + 1)
        rem[u] += 1
        rem[v] += 1

    yield from rec(0)


def enumerate_two_factors(G: MultiGraph, limit: Optional[int] = None) -> TwoFactorList:
    out = TwoFactorList()
    for tf in iter_two_factors(G):
        if limit is not None and len(out) >= limit:
            out.truncated = True
            break
        out.append(tf)
    return out


def exists_split_two_factor(G: MultiGraph, e: EdgeRef, f: EdgeRef) -> Optional[TwoFactor]:
    """First 2-factor with exactly two cycles, one through ``e`` and the other through ``f``."""
    e = EdgeRef(*e).normalized()
    f = EdgeRef(*f).normalized()
    if e == f:
        raise ValueError("e and f must be different edge units")
    for tf in iter_two_factors(G, forced=[e, f]):
        if len(tf.components) == 2 and tf.component_of(e) != tf.component_of(f):
            return tf
    return None


def expansion_factor(k: int) -> int:
    """Multiplier on the cycle count when ``k`` vertices are replaced by K_{3,4}."""
    return 12 ** k


__all__ = [
    "Budget",
    "HamiltonReport",
    "TwoFactor",
    "TwoFactorList",
    "count_hamiltonian_cycles",
    "count_through_edge",
    "brute_force_count",
    "has_hamiltonian_path",
    "is_hamiltonian_path",
    "cycle_vertex_sequence",
    "iter_two_factors",
    "enumerate_two_factors",
    "exists_split_two_factor",
    "expansion_factor",
]
