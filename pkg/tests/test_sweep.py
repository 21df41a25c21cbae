import csv
import random

import numpy as np
import pytest

from similnet.errors import InvalidGridError, NoSurvivorsError
from similnet.graphs import build_graph
from similnet.matrices import CoMatrix, NormMatrix, accumulate, normalize
from similnet.simulate import NoiseModel, planted_catalog, simulate_cohort
from similnet.survey import SessionConfig
from similnet.sweep import (
    ROOTS_DEFINITION,
    default_grid,
    export_hierarchy_csv,
    export_sweep_csv,
    pair_hierarchy,
    root_designs,
    threshold_sweep,
)


def norm_from_pairs(n: int, pairs: dict[tuple[int, int], float]) -> NormMatrix:
    weights = np.zeros((n, n))
    mask = np.zeros((n, n), dtype=bool)
    for (i, j), w in pairs.items():
        weights[i, j] = weights[j, i] = w
        mask[i, j] = mask[j, i] = True
    return NormMatrix(weights, mask)


CHAIN_AND_PAIR = {(0, 1): 0.9, (1, 2): 0.6, (2, 3): 0.3, (4, 5): 0.9}


class TestDefaultGrid:
    def test_standard_grid(self):
        grid = default_grid()
        assert grid == [
            0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6,
        ]

    def test_no_accumulated_float_drift(self):
        # 0.05 * 3 is 0.15000000000000002 in raw float arithmetic.
        assert 0.15 in default_grid()
        assert 0.35 in default_grid()

    def test_custom_bounds(self):
        assert default_grid(0.2, 0.4, 0.1) == [0.2, 0.3, 0.4]

    def test_bad_step_rejected(self):
        with pytest.raises(InvalidGridError):
            default_grid(step=0.0)


class TestGridValidation:
    def test_empty_grid(self):
        norm = norm_from_pairs(2, {(0, 1): 0.5})
        with pytest.raises(InvalidGridError):
            threshold_sweep(norm, grid=[])

    @pytest.mark.parametrize("grid", [[-0.1, 0.5], [0.5, 1.5]])
    def test_out_of_range_values(self, grid):
        norm = norm_from_pairs(2, {(0, 1): 0.5})
        with pytest.raises(InvalidGridError):
            threshold_sweep(norm, grid=grid)

    @pytest.mark.parametrize("grid", [[0.1, 0.1], [0.2, 0.1]])
    def test_non_increasing_grids(self, grid):
        norm = norm_from_pairs(2, {(0, 1): 0.5})
        with pytest.raises(InvalidGridError):
            threshold_sweep(norm, grid=grid)


@pytest.fixture(scope="module")
def report():
    norm = norm_from_pairs(6, CHAIN_AND_PAIR)
    return threshold_sweep(norm, grid=[0.0, 0.3, 0.6, 0.9, 1.0])


class TestSweep:
    def test_per_threshold_counts(self, report):
        assert [e.edge_count for e in report.entries] == [4, 4, 3, 2, 0]
        assert [e.vertex_count for e in report.entries] == [6, 6, 5, 4, 0]

    def test_component_sizes_sorted_descending(self, report):
        assert report.entry_at(0.0).component_sizes == (4, 2)
        assert report.entry_at(0.9).component_sizes == (2, 2)

    def test_diameters(self, report):
        assert report.entry_at(0.0).diameter == 3
        assert report.entry_at(0.6).diameter == 2

    def test_empty_tail_entry(self, report):
        tail = report.entry_at(1.0)
        assert tail.vertex_count == 0
        assert tail.component_count == 0
        assert tail.partition is None
        assert tail.modularity is None
        assert tail.diameter is None

    def test_disjoint_pairs_at_top_threshold(self, report):
        entry = report.entry_at(0.9)
        assert entry.partition.communities() == [[0, 1], [4, 5]]
        assert entry.modularity == pytest.approx(0.5)

    def test_roots_come_from_highest_surviving_threshold(self, report):
        assert report.root_tau == 0.9
        assert report.root_pairs == ((0, 1), (4, 5))
        assert report.root_groups == ((0, 1), (4, 5))
        assert report.root_designs == (0, 1, 4, 5)
        assert root_designs(report) == {0, 1, 4, 5}

    def test_entry_lookup(self, report):
        assert report.entry_at(0.6).edge_count == 3
        with pytest.raises(KeyError):
            report.entry_at(0.2)

    def test_json_form_carries_the_roots_definition(self, report):
        obj = report.to_json_obj()
        assert obj["roots_definition"] == ROOTS_DEFINITION
        assert len(obj["entries"]) == len(report.grid)
        assert obj["root_pairs"] == [[0, 1], [4, 5]]


class TestSweepProperties:
    def test_edge_counts_never_increase(self):
        rng = random.Random(23)
        for _ in range(5):
            n = rng.randint(3, 10)
            pairs = {
                (i, j): rng.random()
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.5
            }
            report = threshold_sweep(norm_from_pairs(n, pairs))
            counts = [e.edge_count for e in report.entries]
            assert all(b <= a for a, b in zip(counts, counts[1:]))

    def test_root_pairs_survive_at_every_lower_threshold(self):
        rng = random.Random(29)
        for _ in range(5):
            n = rng.randint(3, 10)
            pairs = {
                (i, j): rng.random()
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.5
            }
            norm = norm_from_pairs(n, pairs)
            report = threshold_sweep(norm)
            if report.root_tau is None:
                continue
            for tau in report.grid:
                if tau > report.root_tau:
                    continue
                g = build_graph(norm, tau)
                for pair in report.root_pairs:
                    assert g.has_edge(*pair)


class TestNoSurvivors:
    def test_all_empty_sweep(self):
        norm = norm_from_pairs(3, {(0, 1): 0.5})
        report = threshold_sweep(norm, grid=[0.7, 0.9])
        assert report.root_tau is None
        assert report.root_pairs == ()
        with pytest.raises(NoSurvivorsError):
            root_designs(report)


class TestPairHierarchy:
    def test_order_is_weight_then_support_then_pair(self):
        n = 4
        weights = np.zeros((n, n))
        mask = np.zeros((n, n), dtype=bool)
        counts = np.zeros((n, n), dtype=np.int64)
        for (i, j), (w, c) in {
            (1, 2): (0.9, 3),
            (0, 2): (0.8, 9),
            (2, 3): (0.8, 9),
            (0, 1): (0.8, 5),
            (0, 3): (0.0, 7),  # supported but never co-selected
        }.items():
            weights[i, j] = weights[j, i] = w
            mask[i, j] = mask[j, i] = True
            counts[i, j] = counts[j, i] = c
        ranks = pair_hierarchy(NormMatrix(weights, mask), CoMatrix(counts))
        assert [r.pair for r in ranks] == [(1, 2), (0, 2), (2, 3), (0, 1)]
        assert ranks[0].weight == 0.9
        assert ranks[1].support == 9

    def test_dimension_mismatch_rejected(self):
        norm = norm_from_pairs(3, {(0, 1): 0.5})
        with pytest.raises(ValueError):
            pair_hierarchy(norm, CoMatrix.zeros(4))

    def test_agrees_with_graph_edges_at_positive_thresholds(self):
        rng = random.Random(41)
        events = []
        from datetime import datetime, timezone

        from similnet.survey import SelectionEvent

        ts = datetime(2024, 1, 1, tzinfo=timezone.utc)
        for it in range(1, 41):
            shown = tuple(sorted(rng.sample(range(10), 5)))
            selected = tuple(sorted(rng.sample(shown, rng.randint(0, 3))))
            events.append(SelectionEvent("s", it, shown, selected, ts))
        c, s = accumulate(events, 10)
        norm = normalize(c, s)
        ranks = pair_hierarchy(norm, c)
        for tau in (0.2, 0.5, 0.8):
            surviving = {r.pair for r in ranks if r.weight >= tau}
            assert surviving == set(build_graph(norm, tau).edges)


class TestCsvExports:
    def test_sweep_csv_layout(self, tmp_path):
        # Weights all below 0.55 so the top grid rows are genuinely empty.
        norm = norm_from_pairs(6, {(0, 1): 0.5, (1, 2): 0.3, (2, 3): 0.2, (4, 5): 0.5})
        report = threshold_sweep(norm)
        path = tmp_path / "sweep.csv"
        export_sweep_csv(report, path)
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == [
            "tau", "vertices", "edges", "components", "modularity", "cliques", "diameter",
        ]
        assert len(rows) == 1 + 13
        assert rows[1][0] == "0.000000"
        # Empty cells, not placeholders, where a value is undefined.
        assert rows[-1][4] == "" and rows[-1][6] == ""

    def test_hierarchy_csv_layout(self, tmp_path):
        norm = norm_from_pairs(3, {(0, 1): 0.9, (1, 2): 0.4})
        counts = np.zeros((3, 3), dtype=np.int64)
        counts[0, 1] = counts[1, 0] = 4
        counts[1, 2] = counts[2, 1] = 5
        ranks = pair_hierarchy(norm, CoMatrix(counts))
        path = tmp_path / "hierarchy.csv"
        export_hierarchy_csv(ranks, path)
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["design_i", "design_j", "weight", "support"]
        assert rows[1] == ["0", "1", "0.900000", "4"]
        assert rows[2] == ["1", "2", "0.400000", "5"]


class TestPlantedRoots:
    def test_noiseless_roots_stay_inside_typologies(self):
        planted = planted_catalog(24, 4, seed=5)
        config = SessionConfig(pool_size=24, panel_size=6, iterations=8, rng_seed=5)
        cohort = simulate_cohort(planted, 80, NoiseModel(0.0, 0.0), config=config, seed=5)
        c, s = accumulate(cohort.events, 24)
        report = threshold_sweep(normalize(c, s))
        assert report.root_tau is not None and report.root_tau > 0
        assert report.root_groups
        for group in report.root_groups:
            labels = {planted.labels[v] for v in group}
            assert len(labels) == 1
