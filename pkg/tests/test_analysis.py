import hashlib
from datetime import datetime, timezone
from pathlib import Path

import pytest

from similnet.analysis import (
    AnalysisRequest,
    infer_pool_size,
    run_analysis,
    write_report_files,
)
from similnet.errors import InvalidConfigError
from similnet.simulate import NoiseModel, planted_catalog, simulate_cohort
from similnet.survey import DEFAULT_POOL_SIZE, SelectionEvent, SessionConfig

TS = datetime(2024, 1, 1, tzinfo=timezone.utc)


def tiny_events() -> list[SelectionEvent]:
    return [
        SelectionEvent("a", 1, (0, 1, 2, 3), (0, 1), TS),
        SelectionEvent("a", 2, (0, 1, 2, 3), (2, 3), TS),
        SelectionEvent("b", 1, (0, 1, 2, 3), (0, 1, 2), TS),
    ]


class TestRequestValidation:
    def test_exactly_one_of_tau_or_grid(self):
        with pytest.raises(InvalidConfigError):
            AnalysisRequest().validate()
        with pytest.raises(InvalidConfigError):
            AnalysisRequest(tau=0.2, grid=(0.1, 0.2)).validate()
        AnalysisRequest(tau=0.2).validate()
        AnalysisRequest(grid=(0.1, 0.2)).validate()

    def test_tau_range(self):
        with pytest.raises(InvalidConfigError):
            AnalysisRequest(tau=1.5).validate()
        with pytest.raises(InvalidConfigError):
            AnalysisRequest(tau=-0.1).validate()

    def test_pool_size_and_support(self):
        with pytest.raises(InvalidConfigError):
            AnalysisRequest(tau=0.5, pool_size=1).validate()
        with pytest.raises(InvalidConfigError):
            AnalysisRequest(tau=0.5, min_support=-1).validate()

    def test_community_mode(self):
        with pytest.raises(InvalidConfigError):
            AnalysisRequest(tau=0.5, community_mode="fast").validate()


class TestPoolInference:
    def test_uses_highest_shown_id(self):
        assert infer_pool_size(tiny_events()) == 4

    def test_empty_log_falls_back_to_survey_default(self):
        assert infer_pool_size([]) == DEFAULT_POOL_SIZE


class TestSingleThresholdRun:
    def test_report_contents(self):
        result = run_analysis(tiny_events(), AnalysisRequest(tau=0.5, with_metrics=False))
        report = result.report
        assert report["kind"] == "analysis-report"
        assert report["pool_size"] == 4
        assert report["event_count"] == 3
        assert report["session_count"] == 2
        assert report["tau"] == 0.5
        # Pair (0,1): selected together twice in three showings.
        assert result.norm[0, 1] == pytest.approx(2.0 / 3.0)
        assert result.graph.has_edge(0, 1)
        assert report["communities"] is not None
        assert report["metrics"] is None
        assert report["hierarchy_top"][0]["pair"] == [0, 1]

    def test_metrics_included_on_request(self):
        result = run_analysis(
            tiny_events(), AnalysisRequest(tau=0.0, metrics_random_graphs=3)
        )
        assert result.report["metrics"] is not None
        assert "degree_histogram" in result.report["metrics"]

    def test_empty_log_yields_empty_structure(self):
        result = run_analysis([], AnalysisRequest(tau=0.5))
        assert result.report["pool_size"] == DEFAULT_POOL_SIZE
        assert result.report["structure"]["vertex_count"] == 0
        assert result.report["communities"] is None
        assert result.report["metrics"] is None
        assert result.graph.vertex_count == 0

    def test_hierarchy_limit(self):
        result = run_analysis(
            tiny_events(), AnalysisRequest(tau=0.0, hierarchy_limit=2, with_metrics=False)
        )
        assert len(result.report["hierarchy_top"]) == 2
        assert len(result.hierarchy) >= 2


class TestSweepRun:
    def test_sweep_report_contents(self):
        result = run_analysis(
            tiny_events(), AnalysisRequest(grid=(0.0, 0.5, 1.0))
        )
        report = result.report
        assert report["kind"] == "sweep-report"
        assert report["grid"] == [0.0, 0.5, 1.0]
        assert len(report["entries"]) == 3
        assert result.sweep is not None
        assert result.graph is None


class TestReportFiles:
    def test_single_threshold_outputs(self, tmp_path):
        result = run_analysis(
            tiny_events(), AnalysisRequest(tau=0.5, metrics_random_graphs=2)
        )
        written = write_report_files(result, tmp_path / "out")
        for key in ("cooccurrence", "coselection", "weights", "hierarchy", "edges",
                    "communities", "metrics", "report"):
            assert key in written and written[key].exists(), key
        assert "sweep_csv" not in written

    def test_sweep_outputs(self, tmp_path):
        result = run_analysis(tiny_events(), AnalysisRequest(grid=(0.0, 0.5)))
        written = write_report_files(result, tmp_path / "out")
        assert written["sweep_csv"].exists()
        assert "edges" not in written

    def test_identical_runs_are_byte_identical(self, tmp_path):
        planted = planted_catalog(24, 4, seed=2)
        config = SessionConfig(pool_size=24, panel_size=6, iterations=6, rng_seed=2)
        cohort = simulate_cohort(planted, 40, NoiseModel(0.05, 0.05), config=config, seed=2)
        request = AnalysisRequest(tau=0.15, metrics_random_graphs=3)

        def digest(out_dir: Path) -> dict[str, str]:
            written = write_report_files(
                run_analysis(list(cohort.events), request), out_dir
            )
            return {
                key: hashlib.sha256(path.read_bytes()).hexdigest()
                for key, path in sorted(written.items())
            }

        assert digest(tmp_path / "first") == digest(tmp_path / "second")
