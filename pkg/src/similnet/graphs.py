"""Thresholded similarity network and structural primitives.

A Graph is an immutable undirected weighted graph over integer vertex ids.
Thresholding keeps a pair iff it is supported and its weight is >= tau
(inclusive, so a 15% threshold keeps exactly-0.15 edges). At tau=0 this
keeps every supported pair, including those never co-selected (weight 0):
"no threshold" means any co-showing is evidence of a connection, which is
what produces the single dense component the survey data shows before
thresholding. For any tau > 0 all edge weights are positive.

Distances are unweighted hop counts throughout: weights are similarity
strengths, not lengths.
"""

from __future__ import annotations

from collections import deque
from pathlib import Path
from typing import Iterable, Mapping

from .errors import EmptyGraphError
from .matrices import NormMatrix

Edge = tuple[int, int]


def _norm_edge(i: int, j: int) -> Edge:
    if i == j:
        raise ValueError(f"self-loop on vertex {i}")
    return (i, j) if i < j else (j, i)


class Graph:
    """Immutable undirected weighted graph. Vertices may be isolated."""

    __slots__ = ("_vertices", "_edges", "_adj", "threshold")

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Mapping[Edge, float] | Iterable[tuple[int, int, float]],
        threshold: float | None = None,
    ):
        vertex_set = set(int(v) for v in vertices)
        if isinstance(edges, Mapping):
            edge_items = [(i, j, w) for (i, j), w in edges.items()]
        else:
            edge_items = list(edges)
        edge_map: dict[Edge, float] = {}
        for i, j, w in edge_items:
            edge_map[_norm_edge(int(i), int(j))] = float(w)
        adj: dict[int, dict[int, float]] = {v: {} for v in vertex_set}
        for (i, j), w in edge_map.items():
            if i not in adj or j not in adj:
                missing = [v for v in (i, j) if v not in adj]
                raise ValueError(f"edge ({i},{j}) references unknown vertices {missing}")
            adj[i][j] = w
            adj[j][i] = w
        self._vertices = tuple(sorted(vertex_set))
        self._edges = dict(sorted(edge_map.items()))
        self._adj = adj
        self.threshold = threshold

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> dict[Edge, float]:
        return dict(self._edges)

    def neighbors(self, v: int) -> dict[int, float]:
        return dict(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def strength(self, v: int) -> float:
        return sum(self._adj[v].values())

    def has_edge(self, i: int, j: int) -> bool:
        return _norm_edge(i, j) in self._edges

    def weight(self, i: int, j: int) -> float:
        return self._edges[_norm_edge(i, j)]

    @property
    def vertex_count(self) -> int:
        return len(self._vertices)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def adjacency_sets(self) -> dict[int, set[int]]:
        return {v: set(nbrs) for v, nbrs in self._adj.items()}

    def subgraph(self, keep: Iterable[int]) -> "Graph":
        keep_set = set(keep)
        edges = {
            (i, j): w
            for (i, j), w in self._edges.items()
            if i in keep_set and j in keep_set
        }
        return Graph(keep_set & set(self._vertices), edges, threshold=self.threshold)

    def __repr__(self) -> str:
        return f"Graph(|V|={self.vertex_count}, |E|={self.edge_count}, tau={self.threshold})"


def build_graph(
    norm: NormMatrix, tau: float, include_isolated: bool = False
) -> Graph:
    """Keep pair (i, j) iff supported and W[i][j] >= tau.

    Vertices are all n ids when include_isolated, else only kept-edge endpoints.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be in [0, 1], got {tau}")
    n = norm.n
    edges: dict[Edge, float] = {}
    endpoints: set[int] = set()
    for i in range(n):
        row_w = norm.weights[i]
        row_m = norm.support_mask[i]
        for j in range(i + 1, n):
            if row_m[j] and row_w[j] >= tau:
                edges[(i, j)] = float(row_w[j])
                endpoints.add(i)
                endpoints.add(j)
    vertices = range(n) if include_isolated else endpoints
    return Graph(vertices, edges, threshold=tau)


def connected_components(graph: Graph) -> list[list[int]]:
    """Maximal connected vertex sets, each sorted, ordered by smallest member."""
    seen: set[int] = set()
    components: list[list[int]] = []
    for start in graph.vertices:
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        members = [start]
        while queue:
            v = queue.popleft()
            for u in graph._adj[v]:
                if u not in seen:
                    seen.add(u)
                    members.append(u)
                    queue.append(u)
        components.append(sorted(members))
    components.sort(key=lambda c: c[0])
    return components


def maximal_cliques(graph: Graph, min_size: int = 3) -> list[list[int]]:
    """All maximal cliques of size >= min_size (Bron-Kerbosch with pivoting).

    min_size defaults to 3 so a bare edge does not count as a reported clique.
    Output is deterministic: each clique sorted, cliques in lexicographic order.
    """
    adj = graph.adjacency_sets()
    found: list[list[int]] = []

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            if len(r) >= min_size:
                found.append(sorted(r))
            return
        pivot = max(p | x, key=lambda u: (len(p & adj[u]), -u))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    expand(set(), set(graph.vertices), set())
    found.sort()
    return found


def bfs_distances(graph: Graph, source: int) -> dict[int, int]:
    """Hop counts from source to every reachable vertex."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in graph._adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def diameter(graph: Graph) -> int:
    """Largest per-component hop-count eccentricity.

    Disconnected graphs report the maximum over components rather than
    infinity; isolated vertices contribute 0.
    """
    if graph.vertex_count == 0:
        raise EmptyGraphError("diameter of an empty graph is undefined")
    best = 0
    for component in connected_components(graph):
        for v in component:
            ecc = max(bfs_distances(graph, v).values())
            if ecc > best:
                best = ecc
    return best


def average_shortest_path_length(graph: Graph) -> float | None:
    """Mean hop count over connected vertex pairs; None if no such pair."""
    total = 0
    pairs = 0
    for v in graph.vertices:
        dist = bfs_distances(graph, v)
        total += sum(dist.values())
        pairs += len(dist) - 1
    if pairs == 0:
        return None
    return total / pairs


def export_edge_list(graph: Graph, path: str | Path) -> None:
    """Text lines "i j weight", sorted by (i, j); weights at 6 decimals."""
    with open(path, "w") as fh:
        for (i, j), w in sorted(graph.edges.items()):
            fh.write(f"{i} {j} {w:.6f}\n")


def structure_report(graph: Graph, min_clique_size: int = 3) -> dict:
    """JSON-ready summary: components, cliques, diameter."""
    components = connected_components(graph)
    cliques = maximal_cliques(graph, min_size=min_clique_size)
    return {
        "threshold": graph.threshold,
        "vertex_count": graph.vertex_count,
        "edge_count": graph.edge_count,
        "components": components,
        "component_sizes": sorted((len(c) for c in components), reverse=True),
        "cliques": cliques,
        "clique_count": len(cliques),
        "min_clique_size": min_clique_size,
        "diameter": diameter(graph) if graph.vertex_count else None,
    }
