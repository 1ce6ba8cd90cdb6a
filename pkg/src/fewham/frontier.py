"""Exact Hamiltonian-cycle counting by frontier dynamic programming.

Vertices are placed one at a time in a low-separation order; each placement
decides the edge units joining the new vertex to already placed ones.  The
DP state records, for every vertex still on the frontier, whether it has
degree 0, degree 2, or degree 1 together with the far end of its partial
path.  Counts never enumerate cycles, so graphs with astronomically many
Hamiltonian cycles (Meredith-type expansions) are counted exactly.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .graphcore import EdgeRef, MultiGraph

_DONE = -1


def greedy_order(G: MultiGraph, starts: Optional[Iterable[int]] = None) -> List[int]:
    """Vertex order with small frontier; best of several greedy runs."""
    n = G.n
    adj = G.adjacency()
    if starts is None:
        starts = range(n)
    best: Optional[Tuple[int, int, List[int]]] = None
    for s in starts:
        order, width, total = _greedy_from(adj, n, s)
        key = (width, total)
        if best is None or key < best[:2]:
            best = (width, total, order)
    return best[2] if best else []


def _greedy_from(adj, n: int, start: int) -> Tuple[List[int], int, int]:
    placed = [False] * n
    unplaced_deg = [len(a) for a in adj]  # distinct unplaced neighbours
    order = [start]
    placed[start] = True
    open_set = set()
    for w in adj[start]:
        unplaced_deg[w] -= 1
    if unplaced_deg[start]:
        open_set.add(start)
    width = len(open_set)
    total = width
    candidates = set(adj[start])
    while len(order) < n:
        if not candidates:
            rest = [v for v in range(n) if not placed[v]]
            candidates = {rest[0]}
        best_v, best_key = None, None
        for v in candidates:
            closes = sum(1 for u in adj[v] if placed[u] and u in open_set and unplaced_deg[u] == 1)
            stays = 1 if unplaced_deg[v] - 0 > 0 else 0
            grow = stays - closes
            key = (grow, -closes, v)
            if best_key is None or key < best_key:
                best_v, best_key = v, key
        v = best_v
        candidates.discard(v)
        placed[v] = True
        order.append(v)
        for w in adj[v]:
            unplaced_deg[w] -= 1
            if placed[w]:
                if unplaced_deg[w] == 0:
                    open_set.discard(w)
            else:
                candidates.add(w)
        if unplaced_deg[v]:
            open_set.add(v)
        width = max(width, len(open_set) + 1)
        total += len(open_set)
    return order, width, total


def count_hamiltonian_cycles_frontier(
    G: MultiGraph,
    forced: Sequence[EdgeRef] = (),
    forbidden: Sequence[EdgeRef] = (),
    order: Optional[Sequence[int]] = None,
) -> int:
    """Number of Hamiltonian cycles (edge multisets) containing every ``forced`` unit
    and avoiding every ``forbidden`` unit."""
    n = G.n
    if n < 3:
        return 0
    if order is None:
        order = greedy_order(G)
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != n:
        raise ValueError("order must be a permutation of the vertices")

    forced_set: Set[EdgeRef] = {EdgeRef(*e).normalized() for e in forced}
    forbidden_set: Set[EdgeRef] = {EdgeRef(*e).normalized() for e in forbidden}
    adj = G.adjacency()
    # quick rejections
    for ref in forced_set | forbidden_set:
        if not G.has_edge(ref):
            raise ValueError(f"edge {tuple(ref)} not in graph")
    if forced_set & forbidden_set:
        return 0

    # per placement step: list of (earlier vertex, copies allowed, copies forced)
    steps = []
    remaining = [0] * n  # edge units to placed-later vertices, used for exit
    for v in range(n):
        remaining[v] = sum(adj[v].values())
    for i, v in enumerate(order):
        units = []
        for u in sorted(adj[v], key=lambda x: pos[x]):
            if pos[u] >= i:
                continue
            a, b = (u, v) if u < v else (v, u)
            for c in range(adj[v][u]):
                ref = EdgeRef(a, b, c)
                if ref in forbidden_set:
                    units.append((u, None))
                else:
                    units.append((u, ref in forced_set))
        steps.append(units)

    frontier: List[int] = []
    states: Dict[tuple, int] = {(): 1}
    result = 0
    for i, v in enumerate(order):
        # v enters with degree 0 (value = itself)
        idx = _insert_pos(frontier, v)
        frontier.insert(idx, v)
        states = {s[:idx] + (v,) + s[idx:]: c for s, c in states.items()}
        slot = {x: k for k, x in enumerate(frontier)}
        last_step = i == n - 1
        units = steps[i]
        forced_tail = [False] * (len(units) + 1)
        for j in range(len(units) - 1, -1, -1):
            forced_tail[j] = forced_tail[j + 1] or units[j][1] is True
        for j, (u, flag) in enumerate(units):
            remaining[u] -= 1
            remaining[v] -= 1
            if flag is None:
                continue
            su, sv = slot[u], slot[v]
            can_close = last_step and not forced_tail[j + 1]
            nxt: Dict[tuple, int] = defaultdict(int)
            for s, c in states.items():
                if not flag:
                    nxt[s] += c
                mu, mv = s[su], s[sv]
                if mu == _DONE or mv == _DONE:
                    continue
                if mu == v:
                    # u and v end the same path; only the final edge may close it
                    if can_close and all(x == _DONE for k, x in enumerate(s) if k != su and k != sv):
                        result += c
                    continue
                t = list(s)
                open_u = mu != u
                open_v = mv != v
                t[su] = _DONE if open_u else mv
                t[sv] = _DONE if open_v else mu
                if open_u:
                    t[slot[mu]] = mv
                if open_v:
                    t[slot[mv]] = mu
                nxt[tuple(t)] += c
            states = nxt
        # exits: vertices with no remaining edge units must be done
        leaving = [x for x in frontier if remaining[x] == 0]
        if leaving:
            drop = sorted((slot[x] for x in leaving), reverse=True)
            nxt = defaultdict(int)
            for s, c in states.items():
                if any(s[k] != _DONE for k in drop):
                    continue
                t = list(s)
                for k in drop:
                    del t[k]
                nxt[tuple(t)] += c
            states = nxt
            for x in leaving:
                frontier.remove(x)
        if not states:
            break
    return result


def _insert_pos(frontier: List[int], v: int) -> int:
    lo, hi = 0, len(frontier)
    while lo < hi:
        mid = (lo + hi) // 2
        if frontier[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo
