"""Immutable undirected simple graphs in compressed adjacency form.

The adjacency is stored CSR-style: ``indices[indptr[i]:indptr[i+1]]`` holds
the sorted neighbor ids of node ``i``. All operations are read-only, so a
``Graph`` can be shared freely across workers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_array
from scipy.sparse.csgraph import connected_components as _cc
from scipy.sparse.csgraph import shortest_path as _sp

from .errors import Disconnected, InvalidEdge

__all__ = [
    "Graph",
    "DegreeStats",
    "PathResult",
    "build_graph",
    "bfs_path",
    "bfs_distances",
    "diameter",
    "half_diameter_H",
    "largest_component",
    "degree_stats",
]


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph with sorted compressed adjacency."""

    node_count: int
    edge_count: int
    indptr: np.ndarray
    indices: np.ndarray

    def neighbors(self, i: int) -> np.ndarray:
        """Sorted neighbor ids of node ``i`` (read-only view)."""
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def degree(self, i: int) -> int:
        return int(self.indptr[i + 1] - self.indptr[i])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edges(self) -> list[tuple[int, int]]:
        """All undirected edges as (i, j) pairs with i < j, sorted."""
        out = []
        for i in range(self.node_count):
            for j in self.neighbors(i):
                if i < j:
                    out.append((i, int(j)))
        return out

    def to_csr(self) -> csr_array:
        data = np.ones(self.indices.size, dtype=np.int8)
        return csr_array(
            (data, self.indices, self.indptr),
            shape=(self.node_count, self.node_count),
        )


@dataclass(frozen=True)
class DegreeStats:
    mean: float
    median: float
    mode: int
    max: int
    histogram: dict[int, int] = field(compare=False)


@dataclass(frozen=True)
class PathResult:
    """A shortest path as a node sequence; ``length`` counts edges."""

    nodes: tuple[int, ...]
    length: int


def build_graph(edges, node_count: int | None = None) -> Graph:
    """Build a simple undirected graph from an edge iterable.

    Self-loops are dropped and parallel edges collapsed. Node ids must lie
    in ``[0, node_count)``; when ``node_count`` is omitted it is inferred
    as ``max id + 1`` (and 1 for an empty edge list).

    Raises
    ------
    InvalidEdge
        If an id is negative or >= node_count.
    """
    pairs = [(int(a), int(b)) for a, b in edges]
    for a, b in pairs:
        if a < 0 or b < 0:
            raise InvalidEdge(f"negative node id in edge ({a}, {b})")
    if node_count is None:
        node_count = max((max(a, b) for a, b in pairs), default=0) + 1
    if node_count < 1:
        raise InvalidEdge("node_count must be >= 1")
    for a, b in pairs:
        if a >= node_count or b >= node_count:
            raise InvalidEdge(
                f"edge ({a}, {b}) out of range for node_count={node_count}"
            )

    unique = sorted({(min(a, b), max(a, b)) for a, b in pairs if a != b})
    deg = np.zeros(node_count, dtype=np.int64)
    for a, b in unique:
        deg[a] += 1
        deg[b] += 1
    indptr = np.zeros(node_count + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    indices = np.zeros(int(indptr[-1]), dtype=np.int64)
    cursor = indptr[:-1].copy()
    for a, b in unique:
        indices[cursor[a]] = b
        cursor[a] += 1
        indices[cursor[b]] = a
        cursor[b] += 1
    # rows come out sorted: the unique edge list is lexicographic, so each
    # row receives its neighbors in ascending order
    indptr.setflags(write=False)
    indices.setflags(write=False)
    return Graph(
        node_count=node_count,
        edge_count=len(unique),
        indptr=indptr,
        indices=indices,
    )


def bfs_distances(g: Graph, s: int) -> np.ndarray:
    """Hop distances from ``s`` to every node; -1 marks unreachable."""
    dist = np.full(g.node_count, -1, dtype=np.int64)
    dist[s] = 0
    queue = deque([s])
    while queue:
        v = queue.popleft()
        dv = dist[v]
        for w in g.neighbors(v):
            if dist[w] < 0:
                dist[w] = dv + 1
                queue.append(w)
    return dist


def bfs_path(g: Graph, s: int, t: int) -> PathResult:
    """Shortest unweighted path from ``s`` to ``t``.

    Ties between equal-length paths are broken deterministically by
    expanding neighbors in ascending id order, so the parent of every node
    is its lowest-id earliest discoverer.

    Raises
    ------
    Disconnected
        If ``t`` is not reachable from ``s``.
    """
    if s == t:
        return PathResult(nodes=(s,), length=0)
    parent = np.full(g.node_count, -1, dtype=np.int64)
    parent[s] = s
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if parent[w] < 0:
                parent[w] = v
                if w == t:
                    queue.clear()
                    break
                queue.append(w)
    if parent[t] < 0:
        raise Disconnected(f"node {t} unreachable from {s}")
    path = [t]
    while path[-1] != s:
        path.append(int(parent[path[-1]]))
    path.reverse()
    return PathResult(nodes=tuple(path), length=len(path) - 1)


def _all_pairs_max_distance(g: Graph) -> int:
    """Exact diameter via chunked all-pairs BFS; raises on disconnect."""
    adj = g.to_csr()
    best = 0
    chunk = 256
    for start in range(0, g.node_count, chunk):
        idx = np.arange(start, min(start + chunk, g.node_count))
        d = _sp(adj, method="D", unweighted=True, indices=idx)
        if np.isinf(d).any():
            raise Disconnected("graph is disconnected")
        best = max(best, int(d.max()))
    return best


def diameter(g: Graph) -> int:
    """Exact diameter (max hop distance over all pairs).

    Raises
    ------
    Disconnected
        If the graph has more than one component.
    """
    if g.node_count == 1:
        return 0
    return _all_pairs_max_distance(g)


def half_diameter_H(g: Graph) -> int:
    """Half-diameter ``H = ceil(diameter / 2)``."""
    return (diameter(g) + 1) // 2


def largest_component(g: Graph) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the largest connected component.

    Ties between equal-sized components go to the one containing the
    smallest original node id. Returns the subgraph and the old->new id
    mapping for the retained nodes (ascending original ids keep their
    relative order).
    """
    n_comp, labels = _cc(g.to_csr(), directed=False)
    if n_comp == 1:
        return g, {i: i for i in range(g.node_count)}
    sizes = np.bincount(labels, minlength=n_comp)
    best_size = sizes.max()
    # smallest contained original id wins ties; labels are assigned in
    # ascending first-node order, so the first maximal label qualifies
    winner = int(np.flatnonzero(sizes == best_size)[0])
    keep = np.flatnonzero(labels == winner)
    mapping = {int(old): new for new, old in enumerate(keep)}
    edges = []
    for old in keep:
        for w in g.neighbors(int(old)):
            if old < w and labels[w] == winner:
                edges.append((mapping[int(old)], mapping[int(w)]))
    sub = build_graph(edges, node_count=len(keep))
    return sub, mapping


def degree_stats(g: Graph) -> DegreeStats:
    """Degree summary: mean, lower-middle median, modal degree, max.

    The median of an even-count list is the lower middle element; the mode
    breaks count ties toward the smaller degree.
    """
    deg = np.sort(g.degrees)
    values, counts = np.unique(deg, return_counts=True)
    mode = int(values[np.argmax(counts)])
    hist = {int(v): int(c) for v, c in zip(values, counts)}
    return DegreeStats(
        mean=2.0 * g.edge_count / g.node_count,
        median=float(deg[(g.node_count - 1) // 2]),
        mode=mode,
        max=int(deg[-1]),
        histogram=hist,
    )
