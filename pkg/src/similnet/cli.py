"""Command-line interface.

Subcommands: serve, analyze, sweep, simulate, export-matrices.

Exit codes: 0 success; 2 schema or parameter violation (schema errors name the
offending line); 3 count inconsistency (a co-selection exceeding its
co-occurrence).

Environment: SIMILNET_DATA_DIR (server storage), SIMILNET_BIND (host:port),
SIMILNET_ADMIN_TOKEN (remote admin analysis).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .analysis import AnalysisRequest, run_analysis, write_report_files
from .errors import (
    InconsistentCountsError,
    SchemaError,
    SimilnetError,
)
from .eventlog import read_log
from .matrices import accumulate, export_matrices, normalize
from .simulate import (
    DEFAULT_NOISE,
    DEFAULT_TYPOLOGY_COUNT,
    NoiseModel,
    planted_catalog,
    simulate_cohort,
    write_cohort,
)
from .survey import DEFAULT_ITERATIONS, DEFAULT_PANEL_SIZE, DEFAULT_POOL_SIZE
from .sweep import default_grid

DATA_DIR_ENV = "SIMILNET_DATA_DIR"
BIND_ENV = "SIMILNET_BIND"

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_INCONSISTENT = 3


def _default_bind() -> tuple[str, int]:
    bind = os.environ.get(BIND_ENV, "127.0.0.1:8000")
    host, _, port = bind.rpartition(":")
    return host or "127.0.0.1", int(port)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="similnet",
        description="Similarity-survey engine and network analysis pipeline.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    host, port = _default_bind()
    p = sub.add_parser("serve", help="run the survey HTTP service")
    p.add_argument(
        "--data-dir",
        default=os.environ.get(DATA_DIR_ENV, "data"),
        help="storage directory for the append-only logs",
    )
    p.add_argument("--host", default=host)
    p.add_argument("--port", type=int, default=port)
    p.add_argument("--catalog", default=None, help="catalog JSON path (optional)")
    p.add_argument(
        "--ui-dir",
        default=None,
        help="static bundle to serve at /ui (e.g. frontend/dist)",
    )

    def common_log_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--log", required=True, help="JSONL event log to analyze")
        p.add_argument("--pool-size", type=int, default=None)
        p.add_argument("--min-support", type=int, default=1)
        p.add_argument("--out", default=None, help="directory for report files")

    p = sub.add_parser("analyze", help="single-threshold analysis of an event log")
    common_log_args(p)
    p.add_argument("--tau", type=float, required=True, help="edge threshold in [0,1]")
    p.add_argument(
        "--mode",
        default="mixed",
        choices=("mixed", "unweighted", "weighted"),
        help="community detection mode",
    )
    p.add_argument("--no-metrics", action="store_true")
    p.add_argument("--metrics-seed", type=int, default=0)
    p.add_argument("--metrics-random-graphs", type=int, default=20)

    p = sub.add_parser("sweep", help="threshold sweep of an event log")
    common_log_args(p)
    p.add_argument("--from", dest="start", type=float, default=0.0)
    p.add_argument("--to", dest="stop", type=float, default=0.60)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--grid", default=None, help="explicit comma-separated taus")
    p.add_argument(
        "--mode",
        default="mixed",
        choices=("mixed", "unweighted", "weighted"),
    )

    p = sub.add_parser("simulate", help="generate a synthetic respondent cohort")
    p.add_argument("--n", type=int, default=DEFAULT_POOL_SIZE, help="pool size")
    p.add_argument(
        "--g", type=int, default=DEFAULT_TYPOLOGY_COUNT, help="planted typology count"
    )
    p.add_argument("--respondents", type=int, required=True)
    p.add_argument("--beta", type=float, default=DEFAULT_NOISE, help="miss rate")
    p.add_argument("--eps", type=float, default=DEFAULT_NOISE, help="false-include rate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=DEFAULT_ITERATIONS)
    p.add_argument("--panel-size", type=int, default=DEFAULT_PANEL_SIZE)
    p.add_argument("--heterogeneous", action="store_true")
    p.add_argument("--exposure-balanced", action="store_true")
    p.add_argument("--log", default="events.jsonl", help="output event log path")
    p.add_argument("--manifest", default="manifest.json", help="output manifest path")

    p = sub.add_parser("export-matrices", help="write count and weight CSVs")
    common_log_args(p)

    return parser


def _read_events(path: str):
    return read_log(path)[0]


def _print_json(obj: dict) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .catalog import Catalog
    from .server import create_app

    catalog = Catalog.load(args.catalog) if args.catalog else None
    app = create_app(args.data_dir, catalog=catalog, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def _cmd_analyze(args: argparse.Namespace) -> int:
    events = _read_events(args.log)
    request = AnalysisRequest(
        tau=args.tau,
        pool_size=args.pool_size,
        min_support=args.min_support,
        community_mode=args.mode,
        with_metrics=not args.no_metrics,
        metrics_random_graphs=args.metrics_random_graphs,
        metrics_seed=args.metrics_seed,
    )
    result = run_analysis(events, request)
    if args.out:
        write_report_files(result, args.out)
    _print_json(result.report)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    events = _read_events(args.log)
    if args.grid:
        grid = tuple(float(t) for t in args.grid.split(","))
    else:
        grid = tuple(default_grid(args.start, args.stop, args.step))
    request = AnalysisRequest(
        grid=grid,
        pool_size=args.pool_size,
        min_support=args.min_support,
        community_mode=args.mode,
    )
    result = run_analysis(events, request)
    if args.out:
        write_report_files(result, args.out)
    _print_json(result.report)
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    from .survey import SessionConfig

    planted = planted_catalog(args.n, args.g, seed=args.seed)
    noise = NoiseModel(miss_rate=args.beta, false_rate=args.eps)
    config = SessionConfig(
        pool_size=args.n,
        panel_size=args.panel_size,
        iterations=args.iterations,
        rng_seed=args.seed,
        exposure_balanced=args.exposure_balanced,
    )
    result = simulate_cohort(
        planted,
        args.respondents,
        noise,
        config=config,
        seed=args.seed,
        heterogeneous=args.heterogeneous,
    )
    write_cohort(result, args.log, args.manifest)
    _print_json(
        {
            "log": str(args.log),
            "manifest": str(args.manifest),
            "respondents": args.respondents,
            "events": len(result.events),
        }
    )
    return EXIT_OK


def _cmd_export_matrices(args: argparse.Namespace) -> int:
    from .analysis import infer_pool_size

    events = _read_events(args.log)
    n = args.pool_size or infer_pool_size(events)
    c, s = accumulate(events, n)
    norm = normalize(c, s, min_support=args.min_support)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    written = export_matrices(c, s, norm, out)
    _print_json({name: str(path) for name, path in written.items()})
    return EXIT_OK


_COMMANDS = {
    "serve": _cmd_serve,
    "analyze": _cmd_analyze,
    "sweep": _cmd_sweep,
    "simulate": _cmd_simulate,
    "export-matrices": _cmd_export_matrices,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SchemaError as exc:
        where = f"line {exc.line_number}: " if exc.line_number else ""
        print(f"similnet: schema error: {where}{exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except InconsistentCountsError as exc:
        print(f"similnet: inconsistent counts: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except FileNotFoundError as exc:
        print(f"similnet: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except SimilnetError as exc:
        print(f"similnet: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
