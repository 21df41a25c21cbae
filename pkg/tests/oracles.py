"""Brute-force reference implementations used to verify the library.

Everything here favors obviousness over speed: exhaustive path enumeration,
double sums over all vertex pairs, subset enumeration. Rational arithmetic
(fractions.Fraction) is used wherever the library promises exact agreement.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from similnet.graphs import Graph


# -- betweenness by path enumeration ---------------------------------------


def _all_simple_paths(adj: dict[int, list[int]], s: int, t: int) -> list[list[int]]:
    paths: list[list[int]] = []
    stack = [(s, [s])]
    while stack:
        v, path = stack.pop()
        if v == t:
            paths.append(path)
            continue
        for u in adj[v]:
            if u not in path:
                stack.append((u, path + [u]))
    return paths


def enumerated_betweenness(
    graph: Graph, mode: str = "unweighted"
) -> dict[tuple[int, int], Fraction]:
    """Edge betweenness by enumerating every simple path between every pair,
    keeping only the shortest, and splitting each pair's unit of credit
    evenly across its shortest paths."""
    adj = {v: sorted(nbrs) for v, nbrs in graph.adjacency_sets().items()}

    def length(path: list[int]) -> Fraction:
        if mode == "unweighted":
            return Fraction(len(path) - 1)
        total = Fraction(0)
        for a, b in zip(path, path[1:]):
            total += Fraction(1) / Fraction(graph.weight(a, b))
        return total

    bet = {e: Fraction(0) for e in graph.edges}
    vertices = graph.vertices
    for s, t in itertools.combinations(vertices, 2):
        paths = _all_simple_paths(adj, s, t)
        if not paths:
            continue
        lengths = [length(p) for p in paths]
        shortest = min(lengths)
        winners = [p for p, l in zip(paths, lengths) if l == shortest]
        credit = Fraction(1, len(winners))
        for path in winners:
            for a, b in zip(path, path[1:]):
                key = (a, b) if a < b else (b, a)
                bet[key] += credit
    return bet


# -- modularity by the double sum ------------------------------------------


def double_sum_modularity(graph: Graph, assignment: dict[int, int], mode: str) -> float:
    """Q = (1/2m) * sum over ordered pairs (i,j) in the same community of
    [A_ij - k_i * k_j / (2m)], the textbook definition."""

    def mass(i: int, j: int) -> float:
        if not graph.has_edge(i, j):
            return 0.0
        return graph.weight(i, j) if mode == "weighted" else 1.0

    def deg(v: int) -> float:
        return sum(mass(v, u) for u in graph.vertices if u != v)

    two_m = sum(deg(v) for v in graph.vertices)
    q = 0.0
    for i in graph.vertices:
        for j in graph.vertices:
            if assignment[i] != assignment[j]:
                continue
            a_ij = mass(i, j) if i != j else 0.0
            q += a_ij - deg(i) * deg(j) / two_m
    return q / two_m


# -- exhaustive structures -------------------------------------------------


def all_partitions(items: list[int]):
    """Every set partition of items, as lists of lists."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in all_partitions(rest):
        for k in range(len(partial)):
            yield partial[:k] + [[first] + partial[k]] + partial[k + 1 :]
        yield [[first]] + partial


def subset_cliques(graph: Graph, min_size: int) -> list[list[int]]:
    """All maximal cliques by checking every vertex subset."""
    vertices = graph.vertices
    cliques: list[set[int]] = []
    for r in range(1, len(vertices) + 1):
        for combo in itertools.combinations(vertices, r):
            if all(graph.has_edge(a, b) for a, b in itertools.combinations(combo, 2)):
                cliques.append(set(combo))
    maximal = [
        c for c in cliques if not any(c < other for other in cliques)
    ]
    return sorted([sorted(c) for c in maximal if len(c) >= min_size])


def union_find_components(graph: Graph) -> list[list[int]]:
    parent = {v: v for v in graph.vertices}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j in graph.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for v in graph.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def floyd_warshall_diameter(graph: Graph) -> int:
    """Max finite hop distance via all-pairs relaxation."""
    inf = float("inf")
    vs = graph.vertices
    dist = {(a, b): (0 if a == b else inf) for a in vs for b in vs}
    for i, j in graph.edges:
        dist[(i, j)] = dist[(j, i)] = 1
    for k in vs:
        for a in vs:
            for b in vs:
                alt = dist[(a, k)] + dist[(k, b)]
                if alt < dist[(a, b)]:
                    dist[(a, b)] = alt
    finite = [d for d in dist.values() if d != inf]
    return int(max(finite)) if finite else 0


# -- matrices by quadruple loop --------------------------------------------


def quadruple_loop_matrices(events, n: int):
    """C and S as plain lists of lists, one pair comparison at a time."""
    c = [[0] * n for _ in range(n)]
    s = [[0] * n for _ in range(n)]
    for event in events:
        for i in event.shown:
            for j in event.shown:
                if i != j:
                    c[i][j] += 1
        for i in event.selected:
            for j in event.selected:
                if i != j:
                    s[i][j] += 1
    return c, s


# -- ARI by pair counting --------------------------------------------------


def pair_counting_ari(labels_a: list[int], labels_b: list[int]) -> float:
    """ARI from the four pairwise agreement counts, iterating over every
    unordered element pair explicitly."""
    n = len(labels_a)
    n11 = n10 = n01 = n00 = 0
    for i in range(n):
        for j in range(i + 1, n):
            same_a = labels_a[i] == labels_a[j]
            same_b = labels_b[i] == labels_b[j]
            if same_a and same_b:
                n11 += 1
            elif same_a:
                n10 += 1
            elif same_b:
                n01 += 1
            else:
                n00 += 1
    pairs = n11 + n10 + n01 + n00
    if pairs == 0:
        return 1.0
    expected = (n11 + n10) * (n11 + n01) / pairs
    max_index = (2 * n11 + n10 + n01) / 2.0
    if max_index == expected:
        return 1.0
    return (n11 - expected) / (max_index - expected)


# -- seeded random graphs --------------------------------------------------


def random_connected_graph(rng: random.Random, n: int, extra_p: float = 0.35) -> Graph:
    """Random spanning tree plus independent extra edges; always connected."""
    vertices = list(range(n))
    rng.shuffle(vertices)
    edges: dict[tuple[int, int], float] = {}
    for idx in range(1, n):
        a = vertices[idx]
        b = vertices[rng.randrange(idx)]
        edges[(min(a, b), max(a, b))] = 1.0
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges and rng.random() < extra_p:
                edges[(i, j)] = 1.0
    return Graph(range(n), edges)


def random_weighted_connected_graph(rng: random.Random, n: int) -> Graph:
    """Connected graph with weights whose reciprocals are exact in binary.

    Inverse lengths 1/w land on the integers 1, 2, 4, 8, so float and
    rational arithmetic agree bit for bit on path lengths — equal-length
    paths tie in both backends, never only in one.
    """
    base = random_connected_graph(rng, n)
    choices = (0.125, 0.25, 0.5, 1.0)
    edges = {e: rng.choice(choices) for e in base.edges}
    return Graph(base.vertices, edges)
