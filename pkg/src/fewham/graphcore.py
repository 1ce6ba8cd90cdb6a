"""Undirected loopless multigraphs with dense integer vertex ids.

Graphs are treated as values: every mutation primitive returns a fresh
``MultiGraph`` and leaves its argument untouched.
"""

from __future__ import annotations

from collections import Counter
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple


class GraphError(ValueError):
    """Raised for malformed graph input or an invalid mutation."""


class EdgeRef(NamedTuple):
    """One unit of multiplicity between ``u`` and ``v``; ``copy`` tells parallel edges apart."""

    u: int
    v: int
    copy: int = 0

    def normalized(self) -> "EdgeRef":
        if self.u <= self.v:
            return self
        return EdgeRef(self.v, self.u, self.copy)


def _key(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


class MultiGraph:
    """Symmetric multiplicity map on vertices ``0..n-1`` plus optional role labels."""

    __slots__ = ("_n", "_mult", "_labels", "_adj")

    def __init__(
        self,
        n: int,
        mult: Optional[Mapping[Tuple[int, int], int]] = None,
        labels: Optional[Mapping[int, str]] = None,
    ):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        clean: Dict[Tuple[int, int], int] = {}
        for (u, v), k in (mult or {}).items():
            if u == v:
                raise GraphError(f"loop at vertex {u} is not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if k < 0:
                raise GraphError(f"negative multiplicity on ({u}, {v})")
            if k:
                key = _key(u, v)
                clean[key] = clean.get(key, 0) + k
        self._n = n
        self._mult = dict(sorted(clean.items()))
        self._labels = {int(v): str(t) for v, t in sorted((labels or {}).items())}
        for v in self._labels:
            if not 0 <= v < n:
                raise GraphError(f"label on unknown vertex {v}")
        self._adj: Optional[List[Dict[int, int]]] = None

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def labels(self) -> Dict[int, str]:
        return dict(self._labels)

    def label(self, v: int) -> Optional[str]:
        return self._labels.get(v)

    def mult(self, u: int, v: int) -> int:
        if u == v:
            return 0
        return self._mult.get(_key(u, v), 0)

    def multiplicities(self) -> Dict[Tuple[int, int], int]:
        """Sorted ``{(u, v): k}`` with ``u < v`` and ``k >= 1``."""
        return dict(self._mult)

    def adjacency(self) -> List[Dict[int, int]]:
        if self._adj is None:
            adj: List[Dict[int, int]] = [dict() for _ in range(self._n)]
            for (u, v), k in self._mult.items():
                adj[u][v] = k
                adj[v][u] = k
            self._adj = adj
        return self._adj

    def neighbors(self, v: int) -> List[int]:
        return sorted(self.adjacency()[v])

    def degree(self, v: int) -> int:
        return sum(self.adjacency()[v].values())

    def degrees(self) -> List[int]:
        return [sum(a.values()) for a in self.adjacency()]

    def edge_units(self) -> int:
        return sum(self._mult.values())

    def edges(self) -> List[Tuple[int, int, int]]:
        """Sorted ``(u, v, multiplicity)`` triples."""
        return [(u, v, k) for (u, v), k in self._mult.items()]

    def edge_refs(self) -> Iterator[EdgeRef]:
        for (u, v), k in self._mult.items():
            for c in range(k):
                yield EdgeRef(u, v, c)

    def has_edge(self, ref: EdgeRef) -> bool:
        return ref.u != ref.v and 0 <= ref.copy < self.mult(ref.u, ref.v)

    def is_simple(self) -> bool:
        return all(k == 1 for k in self._mult.values())

    def is_regular(self, k: Optional[int] = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        target = degs[0] if k is None else k
        return all(d == target for d in degs)

    def parallel_pairs(self) -> List[Tuple[int, int]]:
        return [e for e, k in self._mult.items() if k > 1]

    def is_connected(self) -> bool:
        if self._n <= 1:
            return True
        return len(self.component_of(0)) == self._n

    def component_of(self, s: int, removed: Iterable[int] = ()) -> set:
        adj = self.adjacency()
        gone = set(removed)
        seen = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen and y not in gone:
                    seen.add(y)
                    stack.append(y)
        return seen

    def subgraph_without(self, vertices: Iterable[int]) -> Tuple["MultiGraph", List[int]]:
        """Delete vertices; returns the relabeled graph and new-id -> old-id list."""
        drop = set(vertices)
        keep = [v for v in range(self._n) if v not in drop]
        new_id = {old: i for i, old in enumerate(keep)}
        mult = {
            (new_id[u], new_id[v]): k
            for (u, v), k in self._mult.items()
            if u in new_id and v in new_id
        }
        labels = {new_id[v]: t for v, t in self._labels.items() if v in new_id}
        return MultiGraph(len(keep), mult, labels), keep

    # -- value semantics -----------------------------------------------

    def with_labels(self, labels: Mapping[int, str]) -> "MultiGraph":
        merged = dict(self._labels)
        merged.update(labels)
        return MultiGraph(self._n, self._mult, merged)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._n == other._n and self._mult == other._mult and self._labels == other._labels

    def same_edges(self, other: "MultiGraph") -> bool:
        return self._n == other._n and self._mult == other._mult

    def __hash__(self) -> int:
        return hash((self._n, tuple(self._mult.items())))

    def __repr__(self) -> str:
        return f"MultiGraph(n={self._n}, edge_units={self.edge_units()})"


# -- construction and mutation primitives -------------------------------


def build_graph(
    n: int,
    edges: Iterable[Sequence[int]],
    allow_parallel: bool = False,
    labels: Optional[Mapping[int, str]] = None,
) -> MultiGraph:
    counts: Counter = Counter()
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise GraphError(f"loop ({u}, {v}) rejected")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        key = _key(u, v)
        if counts[key] and not allow_parallel:
            raise GraphError(f"parallel edge {key} rejected (allow_parallel is off)")
        counts[key] += 1
    return MultiGraph(n, counts, labels)


def delete_edges(G: MultiGraph, refs: Iterable[EdgeRef]) -> MultiGraph:
    """Remove one unit of multiplicity per ref.

    Copies are indexed against the *original* multiplicity, so deleting
    copies 0 and 1 of a double edge removes both.
    """
    mult = G.multiplicities()
    seen = set()
    for raw in refs:
        ref = EdgeRef(*raw).normalized()
        if not G.has_edge(ref) or ref in seen:
            raise GraphError(f"cannot delete missing edge {tuple(ref)}")
        seen.add(ref)
        mult[(ref.u, ref.v)] -= 1
    return MultiGraph(G.n, mult, G.labels)


def disjoint_union(
    G: MultiGraph, H: MultiGraph, tags: Tuple[str, str] = ("", "")
) -> Tuple[MultiGraph, Dict[int, int]]:
    """``H``'s vertex ``i`` becomes ``G.n + i``; returns the union and that offset map.

    Non-empty ``tags`` are prefixed to the labels of the respective operand.
    """
    off = G.n
    mult = G.multiplicities()
    for (u, v), k in H.multiplicities().items():
        mult[(u + off, v + off)] = k

    def tagged(lbls: Dict[int, str], tag: str, shift: int) -> Dict[int, str]:
        return {v + shift: (f"{tag}:{t}" if tag else t) for v, t in lbls.items()}

    labels = tagged(G.labels, tags[0], 0)
    labels.update(tagged(H.labels, tags[1], off))
    return MultiGraph(G.n + H.n, mult, labels), {i: i + off for i in range(H.n)}


def add_path(
    G: MultiGraph,
    u: int,
    v: int,
    length: int,
    tag: str = "path",
    allow_parallel: bool = True,
) -> Tuple[MultiGraph, List[int]]:
    """Join ``u`` and ``v`` by a fresh path with ``length`` edges.

    Internal vertices are appended as ids ``G.n, G.n+1, ...`` in order from
    ``u`` towards ``v`` and labeled ``f"{tag}-{i}"`` (``i`` = distance from ``u``).
    """
    if u == v:
        raise GraphError("path endpoints must differ")
    if length < 1:
        raise GraphError(f"path length must be >= 1, got {length}")
    if length == 1 and G.mult(u, v) >= 1 and not allow_parallel:
        raise GraphError(f"length-1 path would duplicate edge ({u}, {v})")
    internal = list(range(G.n, G.n + length - 1))
    seq = [u] + internal + [v]
    mult = G.multiplicities()
    for x, y in zip(seq, seq[1:]):
        key = _key(x, y)
        mult[key] = mult.get(key, 0) + 1
    labels = G.labels
    for i, x in enumerate(internal, start=1):
        labels[x] = f"{tag}-{i}"
    return MultiGraph(G.n + length - 1, mult, labels), internal


def add_edges(G: MultiGraph, pairs: Iterable[Sequence[int]]) -> MultiGraph:
    mult = G.multiplicities()
    for u, v in pairs:
        if u == v:
            raise GraphError(f"loop ({u}, {v}) rejected")
        key = _key(u, v)
        mult[key] = mult.get(key, 0) + 1
    return MultiGraph(G.n, mult, G.labels)


# -- catalog --------------------------------------------------------------


def complete_graph(n: int) -> MultiGraph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(p: int, q: int) -> MultiGraph:
    return build_graph(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def cycle_graph(n: int) -> MultiGraph:
    if n < 3:
        raise GraphError("a simple cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> MultiGraph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])
