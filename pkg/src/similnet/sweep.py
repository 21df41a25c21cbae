"""Threshold sweep, typology roots, and the co-selection pair hierarchy.

Sweeping the edge threshold from 0 upward peels the network down to its
strongest pairs. The pairs surviving at the highest non-empty threshold are
the operational "typology roots": each surviving component is one root set.
This is a constructed definition (strongest-surviving pairs per component)
and is printed with every report.

The pair hierarchy is the total order of all positive-weight supported
pairs: weight descending, then co-showing support descending, then
lexicographic pair order.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .community import (
    DEFAULT_COMMUNITY_MODE,
    Partition,
    best_partition,
    girvan_newman,
)
from .errors import InvalidGridError, NoSurvivorsError
from .graphs import (
    Edge,
    Graph,
    build_graph,
    connected_components,
    diameter,
    maximal_cliques,
)
from .matrices import CoMatrix, NormMatrix

ROOTS_DEFINITION = (
    "root designs are the endpoints of pairs surviving at the highest "
    "non-empty threshold of the sweep, grouped by connected component; "
    "each component is one typology root set"
)


def default_grid(start: float = 0.0, stop: float = 0.60, step: float = 0.05) -> list[float]:
    """Inclusive arithmetic grid, rounded to avoid float drift."""
    if step <= 0:
        raise InvalidGridError(f"step must be positive, got {step}")
    count = int(round((stop - start) / step))
    grid = [round(start + i * step, 10) for i in range(count + 1)]
    return [g for g in grid if g <= stop + 1e-12]


@dataclass(frozen=True)
class SweepEntry:
    tau: float
    vertex_count: int
    edge_count: int
    component_count: int
    component_sizes: tuple[int, ...]
    clique_count: int
    diameter: int | None
    partition: Partition | None

    @property
    def modularity(self) -> float | None:
        return None if self.partition is None else self.partition.modularity


@dataclass(frozen=True)
class SweepReport:
    grid: tuple[float, ...]
    entries: tuple[SweepEntry, ...]
    root_tau: float | None
    root_pairs: tuple[Edge, ...]
    root_groups: tuple[tuple[int, ...], ...]
    root_designs: tuple[int, ...]
    community_mode: str

    def entry_at(self, tau: float) -> SweepEntry:
        for entry in self.entries:
            if entry.tau == tau:
                return entry
        raise KeyError(f"no sweep entry at tau={tau}")

    def to_json_obj(self) -> dict:
        return {
            "grid": list(self.grid),
            "community_mode": self.community_mode,
            "roots_definition": ROOTS_DEFINITION,
            "root_tau": self.root_tau,
            "root_pairs": [list(p) for p in self.root_pairs],
            "root_groups": [list(g) for g in self.root_groups],
            "root_designs": list(self.root_designs),
            "entries": [
                {
                    "tau": e.tau,
                    "vertex_count": e.vertex_count,
                    "edge_count": e.edge_count,
                    "component_count": e.component_count,
                    "component_sizes": list(e.component_sizes),
                    "clique_count": e.clique_count,
                    "diameter": e.diameter,
                    "modularity": e.modularity,
                    "communities": None
                    if e.partition is None
                    else e.partition.communities(),
                }
                for e in self.entries
            ],
        }


def _analyze_tau(
    norm: NormMatrix, tau: float, community_mode: str, min_clique_size: int
) -> tuple[SweepEntry, Graph]:
    graph = build_graph(norm, tau, include_isolated=False)
    components = connected_components(graph)
    cliques = maximal_cliques(graph, min_size=min_clique_size)
    if graph.vertex_count == 0:
        entry = SweepEntry(
            tau=tau,
            vertex_count=0,
            edge_count=0,
            component_count=0,
            component_sizes=(),
            clique_count=0,
            diameter=None,
            partition=None,
        )
        return entry, graph
    partition = best_partition(girvan_newman(graph, mode=community_mode))
    entry = SweepEntry(
        tau=tau,
        vertex_count=graph.vertex_count,
        edge_count=graph.edge_count,
        component_count=len(components),
        component_sizes=tuple(sorted((len(c) for c in components), reverse=True)),
        clique_count=len(cliques),
        diameter=diameter(graph),
        partition=partition,
    )
    return entry, graph


def threshold_sweep(
    norm: NormMatrix,
    grid: list[float] | None = None,
    community_mode: str = DEFAULT_COMMUNITY_MODE,
    min_clique_size: int = 3,
) -> SweepReport:
    """Run the full per-threshold analysis independently at every grid value."""
    grid = list(grid) if grid is not None else default_grid()
    if not grid:
        raise InvalidGridError("grid is empty")
    if any(not 0.0 <= g <= 1.0 for g in grid):
        raise InvalidGridError(f"grid values must lie in [0, 1]: {grid}")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidGridError(f"grid must be strictly increasing: {grid}")

    entries: list[SweepEntry] = []
    graphs: list[Graph] = []
    for tau in grid:
        entry, graph = _analyze_tau(norm, tau, community_mode, min_clique_size)
        entries.append(entry)
        graphs.append(graph)

    root_tau = None
    root_pairs: tuple[Edge, ...] = ()
    root_groups: tuple[tuple[int, ...], ...] = ()
    for entry, graph in zip(reversed(entries), reversed(graphs)):
        if entry.edge_count > 0:
            root_tau = entry.tau
            root_pairs = tuple(sorted(graph.edges))
            root_groups = tuple(
                tuple(c) for c in connected_components(graph) if len(c) > 1
            )
            break
    root_designs = tuple(sorted({v for pair in root_pairs for v in pair}))

    return SweepReport(
        grid=tuple(grid),
        entries=tuple(entries),
        root_tau=root_tau,
        root_pairs=root_pairs,
        root_groups=root_groups,
        root_designs=root_designs,
        community_mode=community_mode,
    )


def root_designs(report: SweepReport) -> set[int]:
    """Union of root-pair endpoints; raises if the whole sweep was empty."""
    if report.root_tau is None:
        raise NoSurvivorsError("every grid entry produced an empty graph")
    return set(report.root_designs)


@dataclass(frozen=True)
class PairRank:
    pair: Edge
    weight: float
    support: int


def pair_hierarchy(norm: NormMatrix, counts: CoMatrix) -> list[PairRank]:
    """Total order over supported positive-weight pairs.

    Sorted by weight descending, co-showing support descending, then pair.
    """
    if norm.n != counts.n:
        raise ValueError(f"dimension mismatch: W is {norm.n}, C is {counts.n}")
    ranks: list[PairRank] = []
    for i in range(norm.n):
        for j in range(i + 1, norm.n):
            w = float(norm.weights[i, j])
            if norm.support_mask[i, j] and w > 0:
                ranks.append(PairRank(pair=(i, j), weight=w, support=int(counts.values[i, j])))
    ranks.sort(key=lambda r: (-r.weight, -r.support, r.pair))
    return ranks


def export_sweep_csv(report: SweepReport, path: str | Path) -> None:
    """One row per threshold, for plotting."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["tau", "vertices", "edges", "components", "modularity", "cliques", "diameter"]
        )
        for e in report.entries:
            writer.writerow(
                [
                    f"{e.tau:.6f}",
                    e.vertex_count,
                    e.edge_count,
                    e.component_count,
                    "" if e.modularity is None else f"{e.modularity:.6f}",
                    e.clique_count,
                    "" if e.diameter is None else e.diameter,
                ]
            )


def export_hierarchy_csv(ranks: list[PairRank], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["design_i", "design_j", "weight", "support"])
        for r in ranks:
            writer.writerow([r.pair[0], r.pair[1], f"{r.weight:.6f}", r.support])
