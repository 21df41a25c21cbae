"""Synthetic respondents over a planted-typology catalog.

The respondent model is deliberately minimal: at each panel the respondent
anchors on one uniformly chosen design and groups everything shown that shares
the anchor's typology, missing each true member with probability `miss_rate`
and adding each non-member with probability `false_rate`. This is a model of
the single-group task, not a claim about how people actually judge similarity.

Planted labels give ground truth, so end-to-end recovery of the typologies by
the full pipeline can be scored with the adjusted Rand index.

Determinism: panels come from the session engine's seeded stream and all
respondent choices from a per-respondent stream derived by hashing
(seed, respondent index), so a cohort is reproducible event for event and can
be simulated respondent-by-respondent in parallel.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from math import comb
from pathlib import Path

from .catalog import Catalog
from .errors import InvalidConfigError, UndefinedResultError
from .eventlog import write_log
from .survey import SelectionEvent, SessionConfig, SurveyEngine

SIM_EPOCH = datetime(2024, 1, 1, tzinfo=timezone.utc)

DEFAULT_TYPOLOGY_COUNT = 6
DEFAULT_NOISE = 0.05


@dataclass(frozen=True)
class PlantedCatalog:
    """Pool of n designs with a hidden typology label per design."""

    n: int
    labels: dict[int, int]

    def __post_init__(self):
        if set(self.labels) != set(range(self.n)):
            raise InvalidConfigError("labels must cover exactly the ids 0..n-1")

    @property
    def typology_count(self) -> int:
        return len(set(self.labels.values()))

    def members(self, typology: int) -> list[int]:
        return sorted(i for i, t in self.labels.items() if t == typology)

    def typologies(self) -> list[list[int]]:
        return [self.members(t) for t in sorted(set(self.labels.values()))]


@dataclass(frozen=True)
class NoiseModel:
    """miss_rate: a true-typology plan is omitted; false_rate: an outside plan
    is included. Both per-design, independent."""

    miss_rate: float = 0.0
    false_rate: float = 0.0

    def __post_init__(self):
        for name, value in (("miss_rate", self.miss_rate), ("false_rate", self.false_rate)):
            if not 0.0 <= value <= 1.0:
                raise InvalidConfigError(f"{name} must lie in [0, 1], got {value}")


def planted_catalog(n: int, g: int, seed: int = 0) -> PlantedCatalog:
    """Round-robin labels over n designs, shuffled by seed; sizes differ by <= 1."""
    if not 1 <= g <= n:
        raise InvalidConfigError(f"need 1 <= typologies <= pool size, got g={g} n={n}")
    labels_flat = [i % g for i in range(n)]
    rng = random.Random(seed)
    rng.shuffle(labels_flat)
    return PlantedCatalog(n=n, labels={i: labels_flat[i] for i in range(n)})


def derive_respondent_seed(seed: int, index: int) -> int:
    digest = hashlib.sha256(f"{seed}:resp:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _respondent_noise(noise: NoiseModel, rng: random.Random, heterogeneous: bool) -> NoiseModel:
    """Per-respondent rates drawn uniformly from [0, 2x] (mean preserved)."""
    if not heterogeneous:
        return noise
    return NoiseModel(
        miss_rate=min(1.0, rng.uniform(0.0, 2.0 * noise.miss_rate)),
        false_rate=min(1.0, rng.uniform(0.0, 2.0 * noise.false_rate)),
    )


def simulate_respondent(
    planted: PlantedCatalog,
    config: SessionConfig,
    noise: NoiseModel,
    seed: int,
    session_id: str | None = None,
    engine: SurveyEngine | None = None,
    t0: datetime = SIM_EPOCH,
) -> list[SelectionEvent]:
    """One full session of the anchor model; returns its selection events.

    Panels are drawn by a real session engine so every emitted log satisfies
    the protocol invariants by construction.
    """
    if config.pool_size != planted.n:
        raise InvalidConfigError(
            f"config pool_size {config.pool_size} != catalog size {planted.n}"
        )
    if engine is None:
        engine = SurveyEngine(Catalog.placeholder(planted.n))
    session_id = session_id or f"sim-{seed:x}"
    behavior = random.Random(seed)
    engine.create_session(config, session_id=session_id)
    events: list[SelectionEvent] = []
    for iteration in range(1, config.iterations + 1):
        panel = engine.next_panel(session_id)
        anchor = behavior.choice(panel)
        anchor_typology = planted.labels[anchor]
        selected = []
        for design in panel:
            if planted.labels[design] == anchor_typology:
                if behavior.random() >= noise.miss_rate:
                    selected.append(design)
            elif behavior.random() < noise.false_rate:
                selected.append(design)
        event = engine.record_selection(
            session_id,
            iteration,
            selected,
            recorded_at=t0 + timedelta(seconds=iteration - 1),
        )
        events.append(event)
    return events


@dataclass(frozen=True)
class CohortResult:
    planted: PlantedCatalog
    config: SessionConfig
    noise: NoiseModel
    seed: int
    heterogeneous: bool
    session_ids: tuple[str, ...]
    events: tuple[SelectionEvent, ...]

    def manifest_obj(self) -> dict:
        return {
            "kind": "cohort-manifest",
            "n": self.planted.n,
            "typology_count": self.planted.typology_count,
            "labels": {str(i): t for i, t in sorted(self.planted.labels.items())},
            "noise": {
                "miss_rate": self.noise.miss_rate,
                "false_rate": self.noise.false_rate,
            },
            "heterogeneous": self.heterogeneous,
            "seed": self.seed,
            "respondents": len(self.session_ids),
            "config": {
                "pool_size": self.config.pool_size,
                "panel_size": self.config.panel_size,
                "iterations": self.config.iterations,
                "rng_seed": self.config.rng_seed,
                "exposure_balanced": self.config.exposure_balanced,
            },
        }


def simulate_cohort(
    planted: PlantedCatalog,
    respondents: int,
    noise: NoiseModel,
    config: SessionConfig | None = None,
    seed: int = 0,
    heterogeneous: bool = False,
) -> CohortResult:
    """Independent seeded respondents; event order is respondent-major."""
    if respondents < 0:
        raise InvalidConfigError(f"respondents must be >= 0, got {respondents}")
    config = config or SessionConfig(pool_size=planted.n, rng_seed=seed)
    if config.pool_size != planted.n:
        raise InvalidConfigError(
            f"config pool_size {config.pool_size} != catalog size {planted.n}"
        )
    engine = SurveyEngine(Catalog.placeholder(planted.n))
    session_ids: list[str] = []
    events: list[SelectionEvent] = []
    for r in range(respondents):
        r_seed = derive_respondent_seed(seed, r)
        r_noise = _respondent_noise(noise, random.Random(r_seed ^ 0xA5A5A5A5), heterogeneous)
        session_id = f"sim-{seed}-r{r:05d}"
        events.extend(
            simulate_respondent(
                planted,
                config,
                r_noise,
                r_seed,
                session_id=session_id,
                engine=engine,
                t0=SIM_EPOCH + timedelta(seconds=r * config.iterations),
            )
        )
        session_ids.append(session_id)
    return CohortResult(
        planted=planted,
        config=config,
        noise=noise,
        seed=seed,
        heterogeneous=heterogeneous,
        session_ids=tuple(session_ids),
        events=tuple(events),
    )


def write_cohort(result: CohortResult, log_path: str | Path, manifest_path: str | Path) -> None:
    write_log(log_path, result.events)
    with open(manifest_path, "w") as fh:
        json.dump(result.manifest_obj(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_manifest(path: str | Path) -> tuple[PlantedCatalog, NoiseModel, dict]:
    with open(path) as fh:
        obj = json.load(fh)
    planted = PlantedCatalog(
        n=int(obj["n"]), labels={int(k): int(v) for k, v in obj["labels"].items()}
    )
    noise = NoiseModel(
        miss_rate=float(obj["noise"]["miss_rate"]),
        false_rate=float(obj["noise"]["false_rate"]),
    )
    return planted, noise, obj


# -- scoring ---------------------------------------------------------------


def adjusted_rand_index(labels_a: list[int], labels_b: list[int]) -> float:
    """ARI via the pair-counting contingency form; 1.0 when both partitions
    are trivial (the degenerate denominator-zero case)."""
    if len(labels_a) != len(labels_b):
        raise UndefinedResultError(
            f"label sequences differ in length: {len(labels_a)} vs {len(labels_b)}"
        )
    n = len(labels_a)
    if n == 0:
        raise UndefinedResultError("ARI of empty label sequences is undefined")
    contingency: dict[tuple[int, int], int] = {}
    rows: dict[int, int] = {}
    cols: dict[int, int] = {}
    for a, b in zip(labels_a, labels_b):
        contingency[(a, b)] = contingency.get((a, b), 0) + 1
        rows[a] = rows.get(a, 0) + 1
        cols[b] = cols.get(b, 0) + 1
    index = sum(comb(v, 2) for v in contingency.values())
    sum_rows = sum(comb(v, 2) for v in rows.values())
    sum_cols = sum(comb(v, 2) for v in cols.values())
    expected = sum_rows * sum_cols / comb(n, 2) if n >= 2 else 0.0
    max_index = (sum_rows + sum_cols) / 2.0
    if max_index == expected:
        return 1.0
    return (index - expected) / (max_index - expected)


def recovery_score(partition, planted: PlantedCatalog) -> float:
    """ARI between a detected partition and the planted labels, restricted to
    the vertices the partition covers."""
    ids = sorted(partition.assignment)
    covered = [i for i in ids if i in planted.labels]
    if not covered:
        raise UndefinedResultError("partition shares no ids with the catalog")
    detected = [partition.assignment[i] for i in covered]
    truth = [planted.labels[i] for i in covered]
    return adjusted_rand_index(detected, truth)
