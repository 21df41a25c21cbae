"""Structural metrics of a crowd-derived similarity network.

Characterizes the thresholded graph the way a network study would: degree
distribution, clustering against transitivity, degree assortativity,
small-world sigma against degree-preserving rewired baselines, and an
indicative power-law fit of the degree tail. Metrics that are undefined for
a given graph come back as None with a stated reason instead of a guess.

Run: python3 demos/05_network_metrics.py
"""

from __future__ import annotations

import json

from similnet import (
    NoiseModel,
    SessionConfig,
    accumulate,
    build_graph,
    characterize,
    normalize,
    planted_catalog,
    simulate_cohort,
)


def main() -> None:
    # Full-scale cohort: 72 designs, 6 typologies, 300 noisy respondents.
    planted = planted_catalog(72, 6, seed=42)
    config = SessionConfig(rng_seed=42)
    noise = NoiseModel(miss_rate=0.05, false_rate=0.05)
    cohort = simulate_cohort(planted, 300, noise, config=config, seed=42)
    c, s = accumulate(cohort.events, planted.n)
    norm = normalize(c, s)

    graph = build_graph(norm, 0.15)
    print(f"similarity graph at tau=0.15: {graph.vertex_count} vertices, "
          f"{graph.edge_count} edges\n")

    report = characterize(graph, n_random=20, seed=0)

    hist = report.degree_histogram
    print("degree histogram (degree: count):")
    for degree in sorted(hist):
        print(f"  {degree:3d}: {'#' * hist[degree]} ({hist[degree]})")

    print(f"\naverage local clustering: {report.avg_local_clustering:.4f}")
    print(f"transitivity:             {report.transitivity:.4f}")

    if report.assortativity is None:
        print(f"assortativity:            undefined ({report.assortativity_reason})")
    else:
        print(f"assortativity:            {report.assortativity:+.4f}")

    if report.small_world_sigma is None:
        print(f"small-world sigma:        undefined ({report.small_world_reason})")
    else:
        print(f"small-world sigma:        {report.small_world_sigma:.4f}  "
              f"(>1 means more clustered than rewired baselines at similar path length)")

    if report.powerlaw is None:
        print(f"power-law fit:            skipped ({report.powerlaw_reason})")
    else:
        fit = report.powerlaw
        print(f"power-law fit:            exponent {fit.exponent:.2f}, "
              f"r^2 {fit.r_squared:.3f} (indicative log-log regression)")

    print("\nfull report as JSON:")
    print(json.dumps(report.to_json_obj(), indent=2)[:600] + " ...")


if __name__ == "__main__":
    main()
