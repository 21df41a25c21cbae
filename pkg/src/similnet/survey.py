"""Survey session engine: randomized panel sampling and selection recording.

Protocol: a session shows `iterations` panels of `panel_size` designs drawn
uniformly without replacement from a pool of `pool_size`; the respondent marks
a (possibly empty) similar subset each time, then answers a closing
questionnaire. Selections are immutable once recorded.

Determinism: the panel RNG is seeded from (rng_seed, session_id), so
re-creating a session with the same pair and replaying the same selections
reproduces the event log exactly (timestamps excluded).

Concurrency: mutations to a single session are serialized by a per-session
lock; distinct sessions are independent.
"""

from __future__ import annotations

import hashlib
import random
import threading
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum

from .catalog import Catalog
from .errors import (
    InvalidConfigError,
    InvalidSelectionError,
    NotFoundError,
    WrongStateError,
)

DEFAULT_POOL_SIZE = 72
DEFAULT_PANEL_SIZE = 12
DEFAULT_ITERATIONS = 10


@dataclass(frozen=True)
class SessionConfig:
    """Protocol constants for one session; defaults match the survey design."""

    pool_size: int = DEFAULT_POOL_SIZE
    panel_size: int = DEFAULT_PANEL_SIZE
    iterations: int = DEFAULT_ITERATIONS
    rng_seed: int = 0
    exposure_balanced: bool = False

    def validate(self) -> None:
        if not 2 <= self.panel_size <= self.pool_size:
            raise InvalidConfigError(
                f"need 2 <= panel_size <= pool_size, got panel_size={self.panel_size} "
                f"pool_size={self.pool_size}"
            )
        if self.iterations < 1:
            raise InvalidConfigError(f"iterations must be >= 1, got {self.iterations}")
        if self.rng_seed < 0:
            raise InvalidConfigError(f"rng_seed must be non-negative, got {self.rng_seed}")


@dataclass(frozen=True)
class SelectionEvent:
    """One iteration's record: what was shown, what was marked similar."""

    session_id: str
    iteration_index: int
    shown: tuple[int, ...]
    selected: tuple[int, ...]
    recorded_at: datetime

    def __post_init__(self):
        if sorted(set(self.shown)) != sorted(self.shown):
            raise InvalidSelectionError("shown panel contains duplicate ids")
        if not set(self.selected) <= set(self.shown):
            raise InvalidSelectionError("selected ids must be a subset of shown")


@dataclass(frozen=True)
class QuestionnaireResponse:
    """Closing form: free-text criteria plus optional demographics."""

    session_id: str
    criteria_text: str
    age: int | None = None
    occupation: str | None = None


OCCUPATIONS = ("architect", "student", "civil engineer", "urban planner", "other")


class SessionPhase(Enum):
    IN_PROGRESS = "in_progress"
    AWAITING_QUESTIONNAIRE = "awaiting_questionnaire"
    COMPLETED = "completed"


@dataclass
class Session:
    """Mutable session state. Only SurveyEngine methods should mutate it."""

    id: str
    config: SessionConfig
    catalog_version: str
    phase: SessionPhase = SessionPhase.IN_PROGRESS
    next_iteration: int = 1
    events: list[SelectionEvent] = field(default_factory=list)
    questionnaire: QuestionnaireResponse | None = None
    pending_panel: tuple[int, ...] | None = None

    @property
    def is_in_progress(self) -> bool:
        return self.phase is SessionPhase.IN_PROGRESS


def derive_panel_rng(rng_seed: int, session_id: str) -> random.Random:
    """Deterministic per-session RNG stream from (rng_seed, session_id)."""
    material = f"{rng_seed}:{session_id}".encode()
    digest = hashlib.sha256(material).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def sample_panel(rng: random.Random, pool_size: int, panel_size: int) -> tuple[int, ...]:
    """One uniform without-replacement draw of panel_size ids, sorted."""
    return tuple(sorted(rng.sample(range(pool_size), panel_size)))


class SurveyEngine:
    """Owns sessions over one catalog; the single writer for session state."""

    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self._sessions: dict[str, Session] = {}
        self._rngs: dict[str, random.Random] = {}
        self._exposure: dict[str, list[int]] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    # -- session lifecycle -------------------------------------------------

    def create_session(
        self,
        config: SessionConfig | None = None,
        catalog_version: str | None = None,
        session_id: str | None = None,
    ) -> Session:
        config = config or SessionConfig()
        config.validate()
        catalog_version = catalog_version or self.catalog.version
        if catalog_version != self.catalog.version:
            raise NotFoundError(f"unknown catalog version {catalog_version!r}")
        if config.pool_size > len(self.catalog):
            raise InvalidConfigError(
                f"pool_size {config.pool_size} exceeds catalog size {len(self.catalog)}"
            )
        session_id = session_id or f"s-{uuid.uuid4().hex[:12]}"
        with self._registry_lock:
            if session_id in self._sessions:
                raise InvalidConfigError(f"session id {session_id!r} already exists")
            session = Session(id=session_id, config=config, catalog_version=catalog_version)
            self._sessions[session_id] = session
            self._rngs[session_id] = derive_panel_rng(config.rng_seed, session_id)
            self._exposure[session_id] = [0] * config.pool_size
            self._locks[session_id] = threading.Lock()
        return session

    def get_session(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise NotFoundError(f"unknown session {session_id!r}") from None

    def sessions(self) -> list[Session]:
        return list(self._sessions.values())

    # -- the iterated task -------------------------------------------------

    def next_panel(self, session_id: str) -> tuple[int, ...]:
        """Current iteration's panel; repeated calls before submission return
        the same panel (the draw happens once and is stored)."""
        session = self.get_session(session_id)
        with self._locks[session_id]:
            if not session.is_in_progress:
                raise WrongStateError(
                    f"session {session_id} is {session.phase.value}, no panel to show"
                )
            if session.pending_panel is None:
                session.pending_panel = self._draw_panel(session)
            return session.pending_panel

    def _draw_panel(self, session: Session) -> tuple[int, ...]:
        rng = self._rngs[session.id]
        cfg = session.config
        if cfg.exposure_balanced:
            counts = self._exposure[session.id]
            # Least-shown first; ties broken by a random key from the same stream.
            keyed = sorted(range(cfg.pool_size), key=lambda i: (counts[i], rng.random()))
            panel = tuple(sorted(keyed[: cfg.panel_size]))
        else:
            panel = sample_panel(rng, cfg.pool_size, cfg.panel_size)
        for i in panel:
            self._exposure[session.id][i] += 1
        return panel

    def record_selection(
        self,
        session_id: str,
        iteration_index: int,
        selected: set[int] | list[int] | tuple[int, ...],
        recorded_at: datetime | None = None,
    ) -> SelectionEvent:
        session = self.get_session(session_id)
        with self._locks[session_id]:
            if not session.is_in_progress:
                raise WrongStateError(
                    f"session {session_id} is {session.phase.value}, selections are closed"
                )
            if iteration_index != session.next_iteration:
                raise WrongStateError(
                    f"expected iteration {session.next_iteration}, got {iteration_index}"
                )
            if session.pending_panel is None:
                session.pending_panel = self._draw_panel(session)
            shown = session.pending_panel
            selected_ids = tuple(sorted(set(int(i) for i in selected)))
            if not set(selected_ids) <= set(shown):
                extra = sorted(set(selected_ids) - set(shown))
                raise InvalidSelectionError(f"selected ids not in shown panel: {extra}")
            event = SelectionEvent(
                session_id=session_id,
                iteration_index=iteration_index,
                shown=shown,
                selected=selected_ids,
                recorded_at=recorded_at or datetime.now(timezone.utc),
            )
            session.events.append(event)
            session.pending_panel = None
            if iteration_index >= session.config.iterations:
                session.phase = SessionPhase.AWAITING_QUESTIONNAIRE
                session.next_iteration = session.config.iterations + 1
            else:
                session.next_iteration = iteration_index + 1
            return event

    def record_questionnaire(
        self, session_id: str, response: QuestionnaireResponse
    ) -> Session:
        session = self.get_session(session_id)
        with self._locks[session_id]:
            if session.phase is SessionPhase.COMPLETED:
                raise WrongStateError(f"session {session_id} already completed")
            if session.phase is not SessionPhase.AWAITING_QUESTIONNAIRE:
                raise WrongStateError(
                    f"questionnaire comes after iteration {session.config.iterations}; "
                    f"session is at iteration {session.next_iteration}"
                )
            if response.session_id != session_id:
                response = replace(response, session_id=session_id)
            session.questionnaire = response
            session.phase = SessionPhase.COMPLETED
            return session

    # -- replay ------------------------------------------------------------

    def replay_session(
        self,
        config: SessionConfig,
        session_id: str,
        selected_sets: list[list[int]],
        catalog_version: str | None = None,
        recorded_ats: list[datetime] | None = None,
    ) -> Session:
        """Re-create a session and replay recorded selections in order.

        With the original (config, session_id), panels are re-drawn identically,
        so the resulting event log matches the original byte for byte once
        timestamps are excluded.
        """
        session = self.create_session(config, catalog_version, session_id=session_id)
        for idx, selected in enumerate(selected_sets, start=1):
            self.next_panel(session_id)
            ts = recorded_ats[idx - 1] if recorded_ats else None
            self.record_selection(session_id, idx, selected, recorded_at=ts)
        return session
