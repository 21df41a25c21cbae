"""Structural characterization of a similarity network.

Degree distribution, clustering, degree assortativity, a small-world index
against a degree-preserving rewired baseline, and an indicative power-law
fit of the degree tail. All metrics are unweighted and read-only.

Conventions stated in the output: vertices of degree < 2 contribute local
clustering 0 to the average (they are not excluded), and the power-law
check is a log-log CCDF regression, not a maximum-likelihood test.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientSupportError, NoEdgesError
from .graphs import (
    Graph,
    average_shortest_path_length,
    connected_components,
)


def degree_distribution(graph: Graph) -> dict[int, int]:
    """Histogram degree -> vertex count; counts sum to |V|."""
    hist: dict[int, int] = {}
    for v in graph.vertices:
        d = graph.degree(v)
        hist[d] = hist.get(d, 0) + 1
    return dict(sorted(hist.items()))


@dataclass(frozen=True)
class ClusteringSummary:
    local: dict[int, float]
    average: float
    transitivity: float


def _triangles_at(graph: Graph, v: int) -> int:
    nbrs = sorted(graph.neighbors(v))
    count = 0
    for a_idx in range(len(nbrs)):
        for b_idx in range(a_idx + 1, len(nbrs)):
            if graph.has_edge(nbrs[a_idx], nbrs[b_idx]):
                count += 1
    return count


def clustering(graph: Graph) -> ClusteringSummary:
    """Local coefficients, their mean, and global transitivity.

    local C_v = triangles(v) / C(deg v, 2), taken as 0 when deg < 2;
    transitivity = 3 * triangles / connected triples.
    """
    local: dict[int, float] = {}
    triangle_ends = 0
    triples = 0
    for v in graph.vertices:
        d = graph.degree(v)
        if d < 2:
            local[v] = 0.0
            continue
        t = _triangles_at(graph, v)
        possible = d * (d - 1) // 2
        local[v] = t / possible
        triangle_ends += t
        triples += possible
    average = sum(local.values()) / len(local) if local else 0.0
    # Each triangle is counted once per corner, so triangle_ends = 3 * triangles.
    transitivity = triangle_ends / triples if triples else 0.0
    return ClusteringSummary(local=local, average=average, transitivity=transitivity)


def assortativity(graph: Graph) -> float | None:
    """Pearson correlation of endpoint degrees over both edge orientations.

    None when all endpoint degrees are equal (zero variance); raises on an
    edgeless graph.
    """
    if graph.edge_count == 0:
        raise NoEdgesError("assortativity needs at least one edge")
    xs: list[int] = []
    ys: list[int] = []
    for i, j in graph.edges:
        di, dj = graph.degree(i), graph.degree(j)
        xs.extend((di, dj))
        ys.extend((dj, di))
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    vx = x.var()
    vy = y.var()
    if vx == 0 or vy == 0:
        return None
    cov = ((x - x.mean()) * (y - y.mean())).mean()
    return float(cov / np.sqrt(vx * vy))


# -- small world -----------------------------------------------------------


def double_edge_swap(
    graph: Graph, rng: random.Random, attempts: int
) -> Graph:
    """Degree-preserving randomization: repeated (a,b),(c,d) -> (a,d),(c,b) swaps."""
    edges = [list(e) for e in graph.edges]
    present = {tuple(e) for e in graph.edges}
    for _ in range(attempts):
        if len(edges) < 2:
            break
        e1, e2 = rng.sample(range(len(edges)), 2)
        a, b = edges[e1]
        c, d = edges[e2]
        if len({a, b, c, d}) < 4:
            continue
        new1 = (a, d) if a < d else (d, a)
        new2 = (c, b) if c < b else (b, c)
        if new1 in present or new2 in present:
            continue
        present.discard(tuple(sorted((a, b))))
        present.discard(tuple(sorted((c, d))))
        present.add(new1)
        present.add(new2)
        edges[e1] = list(new1)
        edges[e2] = list(new2)
    return Graph(graph.vertices, {(i, j): 1.0 for i, j in present})


def small_world_sigma(
    graph: Graph, n_random: int = 20, seed: int = 0
) -> float | None:
    """sigma = (C/C_rand) / (L/L_rand) against rewired baselines.

    C is transitivity, L the average shortest path length; baselines average
    n_random degree-preserving rewirings with 10*|E| swap attempts each.
    None when the graph is disconnected, has fewer than 4 vertices, or the
    baseline clustering degenerates to 0.
    """
    if graph.vertex_count < 4:
        return None
    if len(connected_components(graph)) != 1:
        return None
    c_obs = clustering(graph).transitivity
    l_obs = average_shortest_path_length(graph)
    if l_obs is None:
        return None
    rng = random.Random(seed)
    attempts = 10 * graph.edge_count
    c_samples: list[float] = []
    l_samples: list[float] = []
    for _ in range(n_random):
        rewired = double_edge_swap(graph, rng, attempts)
        c_samples.append(clustering(rewired).transitivity)
        l_rand = average_shortest_path_length(rewired)
        if l_rand is not None:
            l_samples.append(l_rand)
    c_rand = sum(c_samples) / len(c_samples)
    if not l_samples or c_rand == 0 or l_obs == 0:
        return None
    l_rand_mean = sum(l_samples) / len(l_samples)
    return (c_obs / c_rand) / (l_obs / l_rand_mean)


# -- scale invariance ------------------------------------------------------


@dataclass(frozen=True)
class PowerlawFit:
    exponent: float
    r_squared: float
    x_min: int
    indicative: bool = True  # log-log regression, not an MLE test


def powerlaw_fit(degree_histogram: dict[int, int], x_min: int = 1) -> PowerlawFit:
    """Least-squares slope of log CCDF vs log degree for degrees >= x_min.

    The CCDF of a density ~ x^-a falls as x^-(a-1), so exponent = 1 - slope.
    Raises unless at least 3 distinct degrees >= max(x_min, 1) are present.
    """
    x_min = max(x_min, 1)
    degrees = sorted(d for d in degree_histogram if d >= x_min)
    if len(degrees) < 3:
        raise InsufficientSupportError(
            f"need >= 3 distinct degrees >= {x_min}, got {len(degrees)}"
        )
    total = sum(degree_histogram[d] for d in degrees)
    ccdf = []
    remaining = total
    for d in degrees:
        ccdf.append(remaining / total)
        remaining -= degree_histogram[d]
    log_x = np.log(np.asarray(degrees, dtype=np.float64))
    log_y = np.log(np.asarray(ccdf, dtype=np.float64))
    slope, intercept = np.polyfit(log_x, log_y, 1)
    fitted = slope * log_x + intercept
    ss_res = float(((log_y - fitted) ** 2).sum())
    ss_tot = float(((log_y - log_y.mean()) ** 2).sum())
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 0.0
    return PowerlawFit(exponent=float(1.0 - slope), r_squared=r_squared, x_min=x_min)


# -- the report ------------------------------------------------------------


@dataclass(frozen=True)
class MetricsReport:
    degree_histogram: dict[int, int]
    avg_local_clustering: float
    transitivity: float
    assortativity: float | None
    assortativity_reason: str | None
    small_world_sigma: float | None
    small_world_reason: str | None
    powerlaw: PowerlawFit | None
    powerlaw_reason: str | None

    def to_json_obj(self) -> dict:
        return {
            "degree_histogram": {str(k): v for k, v in self.degree_histogram.items()},
            "avg_local_clustering": self.avg_local_clustering,
            "avg_local_clustering_note": "degree<2 vertices contribute 0, not excluded",
            "transitivity": self.transitivity,
            "assortativity": self.assortativity,
            "assortativity_reason": self.assortativity_reason,
            "small_world_sigma": self.small_world_sigma,
            "small_world_reason": self.small_world_reason,
            "powerlaw": None
            if self.powerlaw is None
            else {
                "exponent": self.powerlaw.exponent,
                "r_squared": self.powerlaw.r_squared,
                "x_min": self.powerlaw.x_min,
                "indicative": self.powerlaw.indicative,
            },
            "powerlaw_reason": self.powerlaw_reason,
        }


def characterize(
    graph: Graph, n_random: int = 20, seed: int = 0, powerlaw_x_min: int = 1
) -> MetricsReport:
    """Compute the full metric suite, encoding undefined values with reasons."""
    hist = degree_distribution(graph)
    summary = clustering(graph)
    try:
        assort = assortativity(graph)
        assort_reason = None if assort is not None else "zero endpoint-degree variance"
    except NoEdgesError:
        assort, assort_reason = None, "graph has no edges"
    sigma = small_world_sigma(graph, n_random=n_random, seed=seed)
    sigma_reason = (
        None
        if sigma is not None
        else "graph disconnected, too small, or degenerate baseline"
    )
    try:
        fit = powerlaw_fit(hist, x_min=powerlaw_x_min)
        fit_reason = None
    except InsufficientSupportError as exc:
        fit, fit_reason = None, str(exc)
    return MetricsReport(
        degree_histogram=hist,
        avg_local_clustering=summary.average,
        transitivity=summary.transitivity,
        assortativity=assort,
        assortativity_reason=assort_reason,
        small_world_sigma=sigma,
        small_world_reason=sigma_reason,
        powerlaw=fit,
        powerlaw_reason=fit_reason,
    )
