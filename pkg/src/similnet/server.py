"""HTTP service for the survey protocol plus admin analysis.

Storage is two append-only JSONL files under the data directory:

    sessions.jsonl  one line per created session: id, config, catalog version
    events.jsonl    the selection/questionnaire log (the analysis input)

Every accepted mutation is appended and fsynced before the engine applies it
and the response is sent, so a crash can lose at most an unacknowledged
request and the in-memory state is always reproducible by replaying the two
files — which is exactly how startup works.

Admin analysis is open on loopback; remote callers must present the token
from SIMILNET_ADMIN_TOKEN in the X-Admin-Token header.
"""

from __future__ import annotations

import json
import os
import random
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, RedirectResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .analysis import AnalysisRequest, run_analysis
from .catalog import Catalog
from .errors import (
    InvalidConfigError,
    InvalidSelectionError,
    NotFoundError,
    SchemaError,
    SimilnetError,
    WrongStateError,
)
from .eventlog import (
    dump_line,
    questionnaire_to_obj,
    read_log,
    selection_to_obj,
    selections_by_session,
)
from .survey import (
    DEFAULT_POOL_SIZE,
    QuestionnaireResponse,
    SelectionEvent,
    SessionConfig,
    SessionPhase,
    SurveyEngine,
)

EVENTS_FILE = "events.jsonl"
SESSIONS_FILE = "sessions.jsonl"
CATALOG_FILE = "catalog.json"
ADMIN_TOKEN_ENV = "SIMILNET_ADMIN_TOKEN"

_LOCAL_HOSTS = {"127.0.0.1", "::1", "localhost", "testclient"}


def _config_to_obj(config: SessionConfig) -> dict:
    return {
        "pool_size": config.pool_size,
        "panel_size": config.panel_size,
        "iterations": config.iterations,
        "rng_seed": config.rng_seed,
        "exposure_balanced": config.exposure_balanced,
    }


def _config_from_obj(obj: dict) -> SessionConfig:
    return SessionConfig(
        pool_size=int(obj["pool_size"]),
        panel_size=int(obj["panel_size"]),
        iterations=int(obj["iterations"]),
        rng_seed=int(obj["rng_seed"]),
        exposure_balanced=bool(obj.get("exposure_balanced", False)),
    )


class SurveyService:
    """Engine + append-ahead persistence; one instance per data directory."""

    def __init__(self, data_dir: str | Path, catalog: Catalog | None = None):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.events_path = self.data_dir / EVENTS_FILE
        self.sessions_path = self.data_dir / SESSIONS_FILE
        catalog_path = self.data_dir / CATALOG_FILE
        if catalog is not None:
            self.catalog = catalog
        elif catalog_path.exists():
            self.catalog = Catalog.load(catalog_path)
        else:
            self.catalog = Catalog.placeholder(DEFAULT_POOL_SIZE)
        self.engine = SurveyEngine(self.catalog)
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self._replay()

    # -- persistence -------------------------------------------------------

    def _append(self, path: Path, line: str) -> None:
        with open(path, "a") as fh:
            fh.write(line)
            fh.flush()
            os.fsync(fh.fileno())

    def _replay(self) -> None:
        if self.sessions_path.exists():
            with open(self.sessions_path) as fh:
                for line_number, line in enumerate(fh, start=1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        obj = json.loads(line)
                        session_id = str(obj["session_id"])
                        config = _config_from_obj(obj["config"])
                    except (KeyError, ValueError, TypeError) as exc:
                        raise SchemaError(
                            f"bad session line: {exc}", line_number
                        ) from exc
                    self.engine.create_session(
                        config,
                        catalog_version=obj.get("catalog_version"),
                        session_id=session_id,
                    )
                    self._locks[session_id] = threading.Lock()
        if not self.events_path.exists():
            return
        events, questionnaires = read_log(self.events_path)
        for session_id, session_events in selections_by_session(events).items():
            for event in session_events:
                panel = self.engine.next_panel(session_id)
                if panel != event.shown:
                    raise SchemaError(
                        f"session {session_id} iteration {event.iteration_index}: "
                        f"logged panel {list(event.shown)} does not match the "
                        f"deterministic redraw {list(panel)}"
                    )
                self.engine.record_selection(
                    session_id,
                    event.iteration_index,
                    event.selected,
                    recorded_at=event.recorded_at,
                )
        for response in questionnaires:
            self.engine.record_questionnaire(response.session_id, response)

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(session_id, threading.Lock())

    # -- mutations (append before apply) -----------------------------------

    def create_session(self, config: SessionConfig) -> dict:
        config.validate()
        if config.pool_size > len(self.catalog):
            raise InvalidConfigError(
                f"pool_size {config.pool_size} exceeds catalog size {len(self.catalog)}"
            )
        session_id = f"s-{random.getrandbits(48):012x}"
        meta = {
            "session_id": session_id,
            "config": _config_to_obj(config),
            "catalog_version": self.catalog.version,
            "created_at": datetime.now(timezone.utc).isoformat(),
        }
        self._append(self.sessions_path, dump_line(meta))
        self.engine.create_session(config, session_id=session_id)
        self._lock_for(session_id)
        panel = self.engine.next_panel(session_id)
        return {
            "session_id": session_id,
            "iteration": 1,
            "panel": list(panel),
            "image_uris": self.catalog.image_uris(list(panel)),
        }

    def current_panel(self, session_id: str) -> dict:
        session = self.engine.get_session(session_id)
        panel = self.engine.next_panel(session_id)
        return {
            "session_id": session_id,
            "iteration": session.next_iteration,
            "iterations_total": session.config.iterations,
            "panel": list(panel),
            "image_uris": self.catalog.image_uris(list(panel)),
        }

    def record_selection(self, session_id: str, iteration: int, selected: list[int]) -> dict:
        session = self.engine.get_session(session_id)
        with self._lock_for(session_id):
            panel = self.engine.next_panel(session_id)
            if iteration != session.next_iteration:
                raise WrongStateError(
                    f"expected iteration {session.next_iteration}, got {iteration}"
                )
            chosen = sorted(set(int(i) for i in selected))
            if not set(chosen) <= set(panel):
                extra = sorted(set(chosen) - set(panel))
                raise InvalidSelectionError(f"selected ids not in shown panel: {extra}")
            event = SelectionEvent(
                session_id=session_id,
                iteration_index=iteration,
                shown=panel,
                selected=tuple(chosen),
                recorded_at=datetime.now(timezone.utc),
            )
            self._append(self.events_path, dump_line(selection_to_obj(event)))
            self.engine.record_selection(
                session_id, iteration, chosen, recorded_at=event.recorded_at
            )
        done = iteration >= session.config.iterations
        return {"next": "questionnaire" if done else iteration + 1}

    def record_questionnaire(
        self, session_id: str, criteria_text: str, age: int | None, occupation: str | None
    ) -> dict:
        session = self.engine.get_session(session_id)
        with self._lock_for(session_id):
            if session.phase is not SessionPhase.AWAITING_QUESTIONNAIRE:
                raise WrongStateError(
                    f"session {session_id} is {session.phase.value}; the questionnaire "
                    f"comes after iteration {session.config.iterations}"
                )
            response = QuestionnaireResponse(
                session_id=session_id,
                criteria_text=criteria_text,
                age=age,
                occupation=occupation,
            )
            self._append(self.events_path, dump_line(questionnaire_to_obj(response)))
            self.engine.record_questionnaire(session_id, response)
        return {"status": "completed"}

    # -- reads -------------------------------------------------------------

    def review(self, session_id: str) -> dict:
        session = self.engine.get_session(session_id)
        return {
            "session_id": session_id,
            "phase": session.phase.value,
            "iterations_total": session.config.iterations,
            "iterations": [
                {
                    "iteration": e.iteration_index,
                    "shown": list(e.shown),
                    "selected": list(e.selected),
                    "image_uris": self.catalog.image_uris(list(e.shown)),
                    "recorded_at": e.recorded_at.astimezone(timezone.utc).isoformat(),
                }
                for e in session.events
            ],
            "questionnaire": None
            if session.questionnaire is None
            else {
                "criteria_text": session.questionnaire.criteria_text,
                "age": session.questionnaire.age,
                "occupation": session.questionnaire.occupation,
            },
        }

    def analysis_events(self) -> list[SelectionEvent]:
        """Fresh read of the log: an isolated snapshot for analysis jobs."""
        if not self.events_path.exists():
            return []
        events, _ = read_log(self.events_path)
        return events


# -- request bodies --------------------------------------------------------


class SessionConfigBody(BaseModel):
    pool_size: int | None = None
    panel_size: int | None = None
    iterations: int | None = None
    rng_seed: int | None = None
    exposure_balanced: bool = False


class CreateSessionBody(BaseModel):
    config: SessionConfigBody | None = None


class SelectionBody(BaseModel):
    selected: list[int]


class QuestionnaireBody(BaseModel):
    criteria_text: str = Field(min_length=1)
    age: int | None = None
    occupation: str | None = None


class AnalysisBody(BaseModel):
    tau: float | None = None
    grid: list[float] | None = None
    min_support: int = 1
    community_mode: str = "mixed"
    min_clique_size: int = 3
    with_metrics: bool = True
    metrics_random_graphs: int = 20
    metrics_seed: int = 0


@dataclass
class _ErrorStatus:
    status: int
    name: str


_ERROR_STATUS = [
    (NotFoundError, _ErrorStatus(404, "not_found")),
    (WrongStateError, _ErrorStatus(409, "wrong_state")),
    (InvalidSelectionError, _ErrorStatus(409, "invalid_selection")),
    (SimilnetError, _ErrorStatus(400, "invalid_request")),
]


def create_app(
    data_dir: str | Path,
    catalog: Catalog | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    service = SurveyService(data_dir, catalog=catalog)
    app = FastAPI(title="similnet", version="0.1.0")
    app.state.service = service

    @app.exception_handler(SimilnetError)
    async def similnet_error(request: Request, exc: SimilnetError):
        for cls, info in _ERROR_STATUS:
            if isinstance(exc, cls):
                return JSONResponse(
                    status_code=info.status,
                    content={"error": info.name, "detail": str(exc)},
                )
        raise exc

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "malformed_body", "detail": exc.errors()},
        )

    def _session_config(body: SessionConfigBody | None) -> SessionConfig:
        defaults = SessionConfig(pool_size=min(DEFAULT_POOL_SIZE, len(service.catalog)))
        if body is None:
            body = SessionConfigBody()
        # A missing seed is drawn once here and persisted with the session.
        rng_seed = (
            body.rng_seed
            if body.rng_seed is not None
            else random.SystemRandom().randrange(2**31)
        )
        return SessionConfig(
            pool_size=body.pool_size or defaults.pool_size,
            panel_size=body.panel_size or defaults.panel_size,
            iterations=body.iterations or defaults.iterations,
            rng_seed=rng_seed,
            exposure_balanced=body.exposure_balanced,
        )

    @app.post("/api/sessions", status_code=201)
    def create_session(body: CreateSessionBody | None = None):
        config = _session_config(body.config if body else None)
        return service.create_session(config)

    @app.get("/api/sessions/{session_id}/panel")
    def get_panel(session_id: str):
        return service.current_panel(session_id)

    @app.post("/api/sessions/{session_id}/iterations/{iteration}/selection")
    def post_selection(session_id: str, iteration: int, body: SelectionBody):
        return service.record_selection(session_id, iteration, body.selected)

    @app.post("/api/sessions/{session_id}/questionnaire")
    def post_questionnaire(session_id: str, body: QuestionnaireBody):
        return service.record_questionnaire(
            session_id, body.criteria_text, body.age, body.occupation
        )

    @app.get("/api/sessions/{session_id}/review")
    def get_review(session_id: str):
        return service.review(session_id)

    @app.get("/api/catalog")
    def get_catalog():
        return {
            "version": service.catalog.version,
            "items": service.catalog.to_json_obj(),
        }

    @app.post("/api/admin/analysis")
    def admin_analysis(body: AnalysisBody, request: Request):
        _check_admin(request)
        analysis_request = AnalysisRequest(
            tau=body.tau,
            grid=None if body.grid is None else tuple(body.grid),
            pool_size=len(service.catalog),
            min_support=body.min_support,
            community_mode=body.community_mode,
            min_clique_size=body.min_clique_size,
            with_metrics=body.with_metrics,
            metrics_random_graphs=body.metrics_random_graphs,
            metrics_seed=body.metrics_seed,
        )
        result = run_analysis(service.analysis_events(), analysis_request)
        return result.report

    def _check_admin(request: Request) -> None:
        host = request.client.host if request.client else "127.0.0.1"
        if host in _LOCAL_HOSTS:
            return
        token = os.environ.get(ADMIN_TOKEN_ENV)
        if token and request.headers.get("x-admin-token") == token:
            return
        raise HTTPException(
            status_code=403,
            detail="admin analysis is loopback-only without a valid token",
        )

    if ui_dir is not None:
        ui_path = Path(ui_dir)
        if not ui_path.is_dir():
            raise InvalidConfigError(f"ui_dir {ui_path} is not a directory")
        app.mount("/ui", StaticFiles(directory=ui_path, html=True), name="ui")

        @app.get("/", include_in_schema=False)
        def root_redirect():
            return RedirectResponse(url="/ui/")

    return app
