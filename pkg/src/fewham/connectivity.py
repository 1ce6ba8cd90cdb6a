"""Vertex and edge connectivity by augmenting-path max-flow, with exhaustive oracles."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from .graphcore import EdgeRef, GraphError, MultiGraph

ORACLE_MAX_N = 12


@dataclass
class ConnectivityCertificate:
    vertex_connectivity: int
    edge_connectivity: int
    witness_vertex_cut: List[int] = field(default_factory=list)
    witness_edge_cut: List[EdgeRef] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "vertex_connectivity": self.vertex_connectivity,
            "edge_connectivity": self.edge_connectivity,
            "witness_vertex_cut": list(self.witness_vertex_cut),
            "witness_edge_cut": [list(e) for e in self.witness_edge_cut],
        }


class _Flow:
    """Residual network with integer capacities; small flows, so BFS augmentation is enough."""

    def __init__(self, size: int):
        self.size = size
        self.head: List[List[int]] = [[] for _ in range(size)]
        self.to: List[int] = []
        self.cap: List[int] = []

    def arc(self, a: int, b: int, c: int, back: int = 0) -> None:
        self.head[a].append(len(self.to))
        self.to.append(b)
        self.cap.append(c)
        self.head[b].append(len(self.to))
        self.to.append(a)
        self.cap.append(back)

    def maxflow(self, s: int, t: int, stop_at: Optional[int] = None) -> Tuple[int, Set[int]]:
        """Flow value and the source side of a minimum cut. Capacities are consumed."""
        flow = 0
        while stop_at is None or flow < stop_at:
            prev = [-1] * self.size
            prev[s] = -2
            q = deque([s])
            while q and prev[t] == -1:
                x = q.popleft()
                for a in self.head[x]:
                    y = self.to[a]
                    if self.cap[a] > 0 and prev[y] == -1:
                        prev[y] = a
                        q.append(y)
            if prev[t] == -1:
                break
            push = None
            y = t
            while y != s:
                a = prev[y]
                push = self.cap[a] if push is None else min(push, self.cap[a])
                y = self.to[a ^ 1]
            y = t
            while y != s:
                a = prev[y]
                self.cap[a] -= push
                self.cap[a ^ 1] += push
                y = self.to[a ^ 1]
            flow += push
        side = {s}
        q = deque([s])
        while q:
            x = q.popleft()
            for a in self.head[x]:
                y = self.to[a]
                if self.cap[a] > 0 and y not in side:
                    side.add(y)
                    q.append(y)
        return flow, side


def _edge_flow(G: MultiGraph, s: int, t: int, stop_at: Optional[int] = None) -> Tuple[int, Set[int]]:
    F = _Flow(G.n)
    for u, v, k in G.edges():
        F.arc(u, v, k, k)
    return F.maxflow(s, t, stop_at)


def edge_connectivity(G: MultiGraph) -> Tuple[int, List[EdgeRef]]:
    """Minimum number of edge units whose removal disconnects ``G``, with one such cut.

    Every parallel copy is a unit of capacity.  Graphs with fewer than two
    vertices have no cut and report 0.
    """
    n = G.n
    if n < 2:
        return 0, []
    comp = G.component_of(0)
    if len(comp) < n:
        return 0, []
    best, best_side = None, None
    for t in range(1, n):
        val, side = _edge_flow(G, 0, t, stop_at=best)
        if best is None or val < best:
            best, best_side = val, side
    cut = [r for r in G.edge_refs() if (r.u in best_side) != (r.v in best_side)]
    return best, cut


def _vertex_flow(G: MultiGraph, s: int, t: int, stop_at: Optional[int] = None) -> Tuple[int, List[int]]:
    # vertex x -> in-node 2x, out-node 2x+1; unit internal capacity except at s, t
    n = G.n
    big = n + 1
    F = _Flow(2 * n)
    for x in range(n):
        F.arc(2 * x, 2 * x + 1, big if x in (s, t) else 1)
    for u, v, _k in G.edges():
        F.arc(2 * u + 1, 2 * v, big)
        F.arc(2 * v + 1, 2 * u, big)
    val, side = F.maxflow(2 * s + 1, 2 * t, stop_at)
    cut = [x for x in range(n) if 2 * x in side and 2 * x + 1 not in side]
    return val, cut


def vertex_connectivity(G: MultiGraph, all_pairs: bool = False) -> Tuple[int, List[int]]:
    """Minimum vertex cut size of a simple graph, with a witness cut.

    Uses flows from a fixed ``v0`` to each non-neighbour plus flows between
    non-adjacent pairs inside the neighbourhood of ``v0``; ``all_pairs`` runs
    the plain quadratic scan instead.  A complete graph reports ``n - 1`` and
    an empty witness.
    """
    if not G.is_simple():
        raise GraphError(
            "vertex connectivity is defined here for simple graphs only; "
            "expand or simplify the multigraph first"
        )
    n = G.n
    if n <= 1:
        return 0, []
    if len(G.component_of(0)) < n:
        return 0, []
    adj = G.adjacency()
    if all(len(a) == n - 1 for a in adj):
        return n - 1, []
    if all_pairs:
        pairs = [(x, y) for x in range(n) for y in range(x + 1, n) if y not in adj[x]]
    else:
        v0 = min(range(n), key=lambda x: (len(adj[x]), x))
        pairs = [(v0, t) for t in range(n) if t != v0 and t not in adj[v0]]
        nb = sorted(adj[v0])
        pairs += [(x, y) for x, y in itertools.combinations(nb, 2) if y not in adj[x]]
    best, best_cut = n - 1, []
    for s, t in pairs:
        val, cut = _vertex_flow(G, s, t, stop_at=best)
        if val < best:
            best, best_cut = val, cut
    return best, sorted(best_cut)


def certificate(G: MultiGraph) -> ConnectivityCertificate:
    ec, ecut = edge_connectivity(G)
    vc, vcut = vertex_connectivity(G)
    return ConnectivityCertificate(vc, ec, vcut, ecut)


def disconnects_vertices(G: MultiGraph, cut) -> bool:
    rest = [v for v in range(G.n) if v not in set(cut)]
    if len(rest) < 2:
        return False
    return len(G.component_of(rest[0], removed=cut)) < len(rest)


def disconnects_edges(G: MultiGraph, cut) -> bool:
    mult: Dict[Tuple[int, int], int] = G.multiplicities()
    for r in cut:
        mult[(r.u, r.v)] -= 1
    return not MultiGraph(G.n, mult).is_connected()


def oracle_connectivity(G: MultiGraph, mode: str) -> int:
    """Smallest disconnecting vertex or edge-unit subset, by exhaustive enumeration.

    The vertex mode of a complete graph returns ``n - 1``.
    """
    n = G.n
    if n > ORACLE_MAX_N:
        raise ValueError(f"oracle limited to n <= {ORACLE_MAX_N}, got {n}")
    if n < 2:
        return 0
    if mode == "vertex":
        for k in range(n - 1):
            for cut in itertools.combinations(range(n), k):
                if disconnects_vertices(G, cut):
                    return k
        return n - 1
    if mode == "edge":
        units = list(G.edge_refs())
        for k in range(len(units) + 1):
            for cut in itertools.combinations(units, k):
                if disconnects_edges(G, cut):
                    return k
        return len(units)
    raise ValueError(f"mode must be 'vertex' or 'edge', got {mode!r}")
