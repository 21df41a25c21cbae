"""Divisive community detection by repeated removal of the max-betweenness edge.

Edge betweenness of e is the sum over unordered vertex pairs {s, t} of the
fraction of shortest s-t paths traversing e (each pair counted once).
"unweighted" mode uses hop counts; "weighted-inverse" treats an edge of
weight w as having length 1/w, so strong similarities are short.

Two arithmetic backends compute the same dependency-accumulation algorithm:
a vectorized float path used by the removal loop, and an exact rational path
(`exact=True`) whose outputs are bit-reproducible and directly comparable to
path enumeration.

The removal loop recomputes betweenness after every single removal, breaking
ties toward the lexicographically smallest edge, and records a partition at
every component split. Split partitions are always scored against the
original graph. Everything is deterministic: two runs on the same input
produce identical dendrograms.

Community modes couple a betweenness flavor with a modularity flavor:

    mixed       paths on topology, quality on weights   (pipeline default)
    unweighted  both on topology
    weighted    paths on inverse weights, quality on weights
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from heapq import heappop, heappush
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    EmptyGraphError,
    InvalidPartitionError,
    InvalidWeightError,
    UndefinedModularityError,
)
from .graphs import Edge, Graph

BETWEENNESS_MODES = ("unweighted", "weighted-inverse")

COMMUNITY_MODES: dict[str, tuple[str, str]] = {
    # name -> (betweenness mode, modularity mode)
    "mixed": ("unweighted", "weighted"),
    "unweighted": ("unweighted", "unweighted"),
    "weighted": ("weighted-inverse", "weighted"),
}

DEFAULT_COMMUNITY_MODE = "mixed"


# -- partitions ------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Vertex -> dense community id, with the modularity it scored.

    modularity is None only when the scored graph has no edge mass.
    """

    assignment: dict[int, int]
    modularity: float | None

    @property
    def community_count(self) -> int:
        return len(set(self.assignment.values()))

    def communities(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for v, c in self.assignment.items():
            groups.setdefault(c, []).append(v)
        return [sorted(groups[c]) for c in sorted(groups)]

    @classmethod
    def from_components(
        cls, components: Iterable[Iterable[int]], modularity: float | None
    ) -> "Partition":
        ordered = sorted((sorted(c) for c in components), key=lambda c: c[0])
        assignment = {v: idx for idx, comp in enumerate(ordered) for v in comp}
        return cls(assignment=assignment, modularity=modularity)


@dataclass(frozen=True)
class EdgeRemoval:
    edge: Edge
    betweenness: float


@dataclass(frozen=True)
class DendrogramLevel:
    """A recorded cut: the residual components after `removal_index` removals."""

    removal_index: int
    partition: Partition


@dataclass
class Dendrogram:
    """Full removal history plus the partitions recorded at each split.

    levels[0] always holds the pre-removal components; each later level is
    appended when a removal increases the component count, so successive
    partitions are strict refinements.
    """

    graph: Graph
    mode: str
    removal_sequence: list[EdgeRemoval] = field(default_factory=list)
    levels: list[DendrogramLevel] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "mode": self.mode,
            "removal_sequence": [
                {"edge": list(r.edge), "betweenness": r.betweenness}
                for r in self.removal_sequence
            ],
            "levels": [
                {
                    "removal_index": lvl.removal_index,
                    "community_count": lvl.partition.community_count,
                    "modularity": lvl.partition.modularity,
                    "communities": lvl.partition.communities(),
                }
                for lvl in self.levels
            ],
        }


# -- modularity ------------------------------------------------------------


def modularity(
    graph: Graph, assignment: Mapping[int, int], mode: str = "weighted"
) -> float:
    """Q = sum over communities of [ in_c/m - (tot_c/(2m))^2 ].

    m is total edge mass, in_c the intra-community mass, tot_c the community's
    degree (strength) sum. With unit masses this is the classic e_ii - a_i^2
    form. Raises when a vertex is uncovered or the graph carries no mass.
    """
    if mode not in ("weighted", "unweighted"):
        raise ValueError(f"unknown modularity mode {mode!r}")
    uncovered = [v for v in graph.vertices if v not in assignment]
    if uncovered:
        raise InvalidPartitionError(f"partition does not cover vertices {uncovered[:8]}")

    def mass(w: float) -> float:
        return w if mode == "weighted" else 1.0

    m = sum(mass(w) for w in graph.edges.values())
    if m <= 0:
        raise UndefinedModularityError("graph has no edge mass; modularity undefined")
    intra: dict[int, float] = {}
    tot: dict[int, float] = {}
    for (i, j), w in graph.edges.items():
        ci, cj = assignment[i], assignment[j]
        tot[ci] = tot.get(ci, 0.0) + mass(w)
        tot[cj] = tot.get(cj, 0.0) + mass(w)
        if ci == cj:
            intra[ci] = intra.get(ci, 0.0) + mass(w)
    q = 0.0
    for c in set(assignment[v] for v in graph.vertices):
        q += intra.get(c, 0.0) / m - (tot.get(c, 0.0) / (2.0 * m)) ** 2
    return q


def _score(graph: Graph, assignment: dict[int, int], mode: str) -> float | None:
    try:
        return modularity(graph, assignment, mode)
    except UndefinedModularityError:
        return None


# -- edge betweenness ------------------------------------------------------


def _check_weights(graph: Graph) -> None:
    for (i, j), w in graph.edges.items():
        if w <= 0:
            raise InvalidWeightError(
                f"edge ({i},{j}) has non-positive weight {w}; weighted-inverse "
                f"betweenness needs positive weights"
            )


def _eb_unweighted_numpy(
    vertices: tuple[int, ...], edges: Mapping[Edge, float]
) -> dict[Edge, float]:
    """Level-synchronous Brandes, batched over all sources at once.

    Row s of dist/sigma/delta is the single-source state for source s; each
    BFS step and each dependency level is one dense matrix product.
    """
    n = len(vertices)
    index = {v: k for k, v in enumerate(vertices)}
    a = np.zeros((n, n), dtype=np.float64)
    for i, j in edges:
        a[index[i], index[j]] = 1.0
        a[index[j], index[i]] = 1.0

    dist = np.full((n, n), -1, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    sigma = np.zeros((n, n), dtype=np.float64)
    np.fill_diagonal(sigma, 1.0)
    frontier = np.eye(n, dtype=bool)
    levels = [frontier]
    d = 0
    while True:
        reach = (sigma * frontier) @ a
        new = ((frontier @ a) > 0) & (dist < 0)
        if not new.any():
            break
        d += 1
        dist[new] = d
        sigma[new] = reach[new]
        levels.append(new)
        frontier = new

    eb = np.zeros((n, n), dtype=np.float64)
    delta = np.zeros((n, n), dtype=np.float64)
    for d in range(len(levels) - 1, 0, -1):
        curm = levels[d]
        prevm = levels[d - 1]
        coef = np.zeros((n, n), dtype=np.float64)
        np.divide(1.0 + delta, sigma, out=coef, where=curm)
        pre = sigma * prevm
        # Per-source edge flow is pre[s, i] * coef[s, j] * a[i, j]; the edge
        # accumulator sums it over sources, the dependency over successors j.
        eb += np.einsum("si,sj->ij", pre, coef) * a
        delta += pre * (coef @ a)
    eb = (eb + eb.T) / 2.0
    return {
        (i, j): float(eb[index[i], index[j]]) for (i, j) in edges
    }


def _eb_unweighted_exact(
    vertices: tuple[int, ...], edges: Mapping[Edge, float]
) -> dict[Edge, Fraction]:
    """Classic Brandes with integer path counts and rational dependencies."""
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    for v in adj:
        adj[v].sort()
    eb: dict[Edge, Fraction] = {e: Fraction(0) for e in edges}
    for s in vertices:
        sigma = {v: 0 for v in vertices}
        sigma[s] = 1
        dist = {s: 0}
        preds: dict[int, list[int]] = {v: [] for v in vertices}
        order: list[int] = []
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = {v: Fraction(0) for v in vertices}
        for w in reversed(order):
            coef = (1 + delta[w]) / sigma[w]
            for v in preds[w]:
                flow = sigma[v] * coef
                key = (v, w) if v < w else (w, v)
                eb[key] += flow
                delta[v] += flow
    return {e: val / 2 for e, val in eb.items()}


def _eb_dijkstra(
    vertices: tuple[int, ...],
    edges: Mapping[Edge, float],
    exact: bool,
) -> dict[Edge, float] | dict[Edge, Fraction]:
    """Brandes over Dijkstra shortest paths with lengths 1/weight."""
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    lengths: dict[Edge, Fraction | float] = {}
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for (i, j), w in edges.items():
        lengths[(i, j)] = one / (Fraction(w) if exact else w)
        adj[i].append(j)
        adj[j].append(i)
    for v in adj:
        adj[v].sort()

    def edge_len(a: int, b: int):
        return lengths[(a, b) if a < b else (b, a)]

    eb = {e: zero for e in edges}
    for s in vertices:
        sigma = {v: 0 for v in vertices}
        sigma[s] = 1
        dist: dict[int, Fraction | float] = {}
        seen: dict[int, Fraction | float] = {s: zero}
        preds: dict[int, list[int]] = {v: [] for v in vertices}
        order: list[int] = []
        heap: list[tuple] = [(zero, s)]
        while heap:
            d, v = heappop(heap)
            if v in dist:
                continue
            dist[v] = d
            order.append(v)
            for u in adj[v]:
                nd = d + edge_len(v, u)
                if u in dist:
                    continue
                if u not in seen or nd < seen[u]:
                    seen[u] = nd
                    heappush(heap, (nd, u))
                    sigma[u] = sigma[v]
                    preds[u] = [v]
                elif nd == seen[u]:
                    sigma[u] += sigma[v]
                    preds[u].append(v)
        delta = {v: zero for v in vertices}
        for w in reversed(order):
            coef = (1 + delta[w]) / sigma[w]
            for v in preds[w]:
                flow = sigma[v] * coef
                key = (v, w) if v < w else (w, v)
                eb[key] += flow
                delta[v] += flow
    return {e: val / 2 for e, val in eb.items()}


def edge_betweenness(
    graph: Graph, mode: str = "unweighted", exact: bool = False
) -> dict[Edge, float]:
    """Betweenness for every edge of the graph; see module docstring."""
    if mode not in BETWEENNESS_MODES:
        raise ValueError(f"unknown betweenness mode {mode!r}")
    if graph.vertex_count == 0:
        raise EmptyGraphError("edge betweenness of an empty graph is undefined")
    if mode == "weighted-inverse":
        _check_weights(graph)
        raw = _eb_dijkstra(graph.vertices, graph.edges, exact=exact)
        return {e: float(v) for e, v in raw.items()}
    if exact:
        return {e: float(v) for e, v in _eb_unweighted_exact(graph.vertices, graph.edges).items()}
    return _eb_unweighted_numpy(graph.vertices, graph.edges)


def edge_betweenness_exact(graph: Graph, mode: str = "unweighted") -> dict[Edge, Fraction]:
    """Exact rational betweenness values, for verification against enumeration."""
    if mode not in BETWEENNESS_MODES:
        raise ValueError(f"unknown betweenness mode {mode!r}")
    if graph.vertex_count == 0:
        raise EmptyGraphError("edge betweenness of an empty graph is undefined")
    if mode == "weighted-inverse":
        _check_weights(graph)
        return _eb_dijkstra(graph.vertices, graph.edges, exact=True)
    return _eb_unweighted_exact(graph.vertices, graph.edges)


# -- the removal loop ------------------------------------------------------


def _components_of(adj: dict[int, dict[int, float]]) -> list[list[int]]:
    seen: set[int] = set()
    out: list[list[int]] = []
    for start in sorted(adj):
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        members = [start]
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    members.append(u)
                    queue.append(u)
        out.append(sorted(members))
    out.sort(key=lambda c: c[0])
    return out


def _component_betweenness(
    members: list[int], adj: dict[int, dict[int, float]], bet_mode: str
) -> dict[Edge, float]:
    edges = {
        (i, j): adj[i][j]
        for i in members
        for j in adj[i]
        if i < j
    }
    if not edges:
        return {}
    if bet_mode == "weighted-inverse":
        raw = _eb_dijkstra(tuple(sorted(members)), edges, exact=False)
        return {e: float(v) for e, v in raw.items()}
    return _eb_unweighted_numpy(tuple(sorted(members)), edges)


def girvan_newman(graph: Graph, mode: str = DEFAULT_COMMUNITY_MODE) -> Dendrogram:
    """Remove max-betweenness edges one at a time until none remain.

    Betweenness is recomputed after every removal (only within the touched
    component; other components are unaffected by the removal). A partition is
    recorded at level 0 and at every component split, scored on the original
    graph with the mode's modularity flavor.
    """
    if mode not in COMMUNITY_MODES:
        raise ValueError(
            f"unknown community mode {mode!r}; expected one of {sorted(COMMUNITY_MODES)}"
        )
    bet_mode, mod_mode = COMMUNITY_MODES[mode]
    if graph.vertex_count == 0:
        raise EmptyGraphError("cannot partition an empty graph")
    if bet_mode == "weighted-inverse":
        _check_weights(graph)

    adj = {v: dict(graph.neighbors(v)) for v in graph.vertices}
    components = _components_of(adj)
    dendro = Dendrogram(graph=graph, mode=mode)
    assignment0 = Partition.from_components(components, None).assignment
    level0 = Partition(assignment=assignment0, modularity=_score(graph, assignment0, mod_mode))
    dendro.levels.append(DendrogramLevel(removal_index=0, partition=level0))

    # Per-component betweenness cache, keyed by smallest member.
    comp_bet: dict[int, dict[Edge, float]] = {}
    comp_members: dict[int, list[int]] = {}
    for comp in components:
        comp_members[comp[0]] = comp
        comp_bet[comp[0]] = _component_betweenness(comp, adj, bet_mode)

    n_components = len(components)
    removals = 0
    while True:
        best_edge: Edge | None = None
        best_val = -1.0
        for bet in comp_bet.values():
            for e, val in bet.items():
                if val > best_val or (val == best_val and (best_edge is None or e < best_edge)):
                    best_val = val
                    best_edge = e
        if best_edge is None:
            break
        i, j = best_edge
        del adj[i][j]
        del adj[j][i]
        removals += 1
        dendro.removal_sequence.append(EdgeRemoval(edge=best_edge, betweenness=best_val))

        # Rebuild the touched component's cache; untouched components keep theirs.
        touched_key = next(k for k, members in comp_members.items() if i in members)
        touched = comp_members.pop(touched_key)
        comp_bet.pop(touched_key)
        sub_adj = {v: adj[v] for v in touched}
        parts = _components_of(sub_adj)
        for part in parts:
            comp_members[part[0]] = part
            comp_bet[part[0]] = _component_betweenness(part, adj, bet_mode)

        if len(parts) > 1:
            n_components += len(parts) - 1
            all_components = sorted(comp_members.values(), key=lambda c: c[0])
            partition = Partition.from_components(all_components, None)
            partition = Partition(
                assignment=partition.assignment,
                modularity=_score(graph, partition.assignment, mod_mode),
            )
            dendro.levels.append(
                DendrogramLevel(removal_index=removals, partition=partition)
            )
    return dendro


def best_partition(dendrogram: Dendrogram) -> Partition:
    """Highest-modularity recorded partition, level 0 included.

    Ties break toward fewer communities, then the earlier split.
    """
    if not dendrogram.levels:
        raise EmptyGraphError("dendrogram has no recorded levels")
    best = dendrogram.levels[0].partition
    for level in dendrogram.levels[1:]:
        cand = level.partition
        if cand.modularity is None:
            continue
        if best.modularity is None:
            best = cand
            continue
        if cand.modularity > best.modularity or (
            cand.modularity == best.modularity
            and cand.community_count < best.community_count
        ):
            best = cand
    return best


def community_report(partition: Partition, mode: str) -> dict:
    """JSON-ready mapping community id -> sorted members, with the score."""
    return {
        "mode": mode,
        "modularity": partition.modularity,
        "community_count": partition.community_count,
        "communities": {
            str(idx): members for idx, members in enumerate(partition.communities())
        },
    }
