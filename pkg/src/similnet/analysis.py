"""Batch analysis over event logs: matrices -> graph -> communities -> metrics.

One request object drives both the CLI and the admin HTTP endpoint. A request
names exactly one of a single threshold or a sweep grid; outputs are plain
JSON/CSV files with stable ordering, so identical inputs produce byte-identical
reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .community import (
    COMMUNITY_MODES,
    DEFAULT_COMMUNITY_MODE,
    best_partition,
    community_report,
    girvan_newman,
)
from .errors import InvalidConfigError
from .graphs import Graph, build_graph, export_edge_list, structure_report
from .matrices import CoMatrix, NormMatrix, accumulate, export_matrices, normalize
from .metrics import characterize
from .survey import DEFAULT_POOL_SIZE, SelectionEvent
from .sweep import (
    PairRank,
    SweepReport,
    export_hierarchy_csv,
    export_sweep_csv,
    pair_hierarchy,
    threshold_sweep,
)


@dataclass(frozen=True)
class AnalysisRequest:
    """Exactly one of `tau` (single-threshold analysis) or `grid` (sweep)."""

    tau: float | None = None
    grid: tuple[float, ...] | None = None
    pool_size: int | None = None
    min_support: int = 1
    community_mode: str = DEFAULT_COMMUNITY_MODE
    min_clique_size: int = 3
    with_metrics: bool = True
    metrics_random_graphs: int = 20
    metrics_seed: int = 0
    hierarchy_limit: int = 20

    def validate(self) -> None:
        if (self.tau is None) == (self.grid is None):
            raise InvalidConfigError("exactly one of tau or grid must be given")
        if self.tau is not None and not 0.0 <= self.tau <= 1.0:
            raise InvalidConfigError(f"tau must lie in [0, 1], got {self.tau}")
        if self.pool_size is not None and self.pool_size < 2:
            raise InvalidConfigError(f"pool_size must be >= 2, got {self.pool_size}")
        if self.min_support < 0:
            raise InvalidConfigError(f"min_support must be >= 0, got {self.min_support}")
        if self.community_mode not in COMMUNITY_MODES:
            raise InvalidConfigError(
                f"unknown community mode {self.community_mode!r}; "
                f"expected one of {sorted(COMMUNITY_MODES)}"
            )


@dataclass
class AnalysisResult:
    """In-memory products of one run, plus the JSON-ready report."""

    report: dict
    c: CoMatrix | None = None
    s: CoMatrix | None = None
    norm: NormMatrix | None = None
    graph: Graph | None = None
    sweep: SweepReport | None = None
    hierarchy: list[PairRank] = field(default_factory=list)


def infer_pool_size(events: list[SelectionEvent]) -> int:
    """Smallest n covering every shown id; survey default for an empty log."""
    top = -1
    for event in events:
        if event.shown:
            top = max(top, max(event.shown))
    return max(top + 1, 0) or DEFAULT_POOL_SIZE


def _provenance(events: list[SelectionEvent], request: AnalysisRequest, n: int) -> dict:
    return {
        "pool_size": n,
        "event_count": len(events),
        "session_count": len({e.session_id for e in events}),
        "min_support": request.min_support,
        "community_mode": request.community_mode,
    }


def run_analysis(events: list[SelectionEvent], request: AnalysisRequest) -> AnalysisResult:
    request.validate()
    n = request.pool_size or infer_pool_size(events)
    c, s = accumulate(events, n)
    norm = normalize(c, s, min_support=request.min_support)
    result = AnalysisResult(report={})
    result.c, result.s, result.norm = c, s, norm
    result.hierarchy = pair_hierarchy(norm, c)

    if request.grid is not None:
        sweep = threshold_sweep(
            norm,
            grid=list(request.grid),
            community_mode=request.community_mode,
            min_clique_size=request.min_clique_size,
        )
        result.sweep = sweep
        result.report = {
            "kind": "sweep-report",
            **_provenance(events, request, n),
            **sweep.to_json_obj(),
        }
        return result

    graph = build_graph(norm, request.tau)
    result.graph = graph
    structure = structure_report(graph, min_clique_size=request.min_clique_size)
    if graph.vertex_count:
        partition = best_partition(girvan_newman(graph, mode=request.community_mode))
        communities = community_report(partition, request.community_mode)
    else:
        communities = None
    metrics = (
        characterize(
            graph,
            n_random=request.metrics_random_graphs,
            seed=request.metrics_seed,
        ).to_json_obj()
        if request.with_metrics and graph.vertex_count
        else None
    )
    result.report = {
        "kind": "analysis-report",
        **_provenance(events, request, n),
        "tau": request.tau,
        "structure": structure,
        "communities": communities,
        "metrics": metrics,
        "hierarchy_top": [
            {"pair": list(r.pair), "weight": r.weight, "support": r.support}
            for r in result.hierarchy[: request.hierarchy_limit]
        ],
    }
    return result


def write_json(obj: dict, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_report_files(result: AnalysisResult, out_dir: str | Path) -> dict[str, Path]:
    """Materialize every product of the run under out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = export_matrices(result.c, result.s, result.norm, out)
    written["hierarchy"] = out / "hierarchy.csv"
    export_hierarchy_csv(result.hierarchy, written["hierarchy"])
    if result.sweep is not None:
        written["sweep_csv"] = out / "sweep.csv"
        export_sweep_csv(result.sweep, written["sweep_csv"])
    if result.graph is not None:
        written["edges"] = out / "edges.txt"
        export_edge_list(result.graph, written["edges"])
        if result.report.get("communities") is not None:
            written["communities"] = out / "communities.json"
            write_json(result.report["communities"], written["communities"])
        if result.report.get("metrics") is not None:
            written["metrics"] = out / "metrics.json"
            write_json(result.report["metrics"], written["metrics"])
    written["report"] = out / "report.json"
    write_json(result.report, written["report"])
    return written
