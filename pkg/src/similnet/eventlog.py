"""Append-only JSONL event log.

Two line shapes share one file, distinguished by their fields:

    selection:     {"session_id", "iteration_index", "shown", "selected", "recorded_at"}
    questionnaire: {"session_id", "criteria_text", "age", "occupation"}

`shown`/`selected` are sorted id arrays; `recorded_at` is ISO-8601 UTC.
Parsing reports schema violations with 1-based line numbers.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Iterable, Iterator

from .errors import SchemaError
from .survey import QuestionnaireResponse, SelectionEvent

SELECTION_FIELDS = {"session_id", "iteration_index", "shown", "selected", "recorded_at"}
QUESTIONNAIRE_FIELDS = {"session_id", "criteria_text", "age", "occupation"}


def selection_to_obj(event: SelectionEvent) -> dict:
    return {
        "session_id": event.session_id,
        "iteration_index": event.iteration_index,
        "shown": list(event.shown),
        "selected": list(event.selected),
        "recorded_at": event.recorded_at.astimezone(timezone.utc).isoformat(),
    }


def questionnaire_to_obj(response: QuestionnaireResponse) -> dict:
    return {
        "session_id": response.session_id,
        "criteria_text": response.criteria_text,
        "age": response.age,
        "occupation": response.occupation,
    }


def dump_line(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def append_selection(fh: IO[str], event: SelectionEvent) -> None:
    fh.write(dump_line(selection_to_obj(event)))
    fh.flush()


def append_questionnaire(fh: IO[str], response: QuestionnaireResponse) -> None:
    fh.write(dump_line(questionnaire_to_obj(response)))
    fh.flush()


def write_log(
    path: str | Path,
    events: Iterable[SelectionEvent],
    questionnaires: Iterable[QuestionnaireResponse] = (),
) -> None:
    with open(path, "w") as fh:
        for event in events:
            append_selection(fh, event)
        for response in questionnaires:
            append_questionnaire(fh, response)


def _parse_selection(obj: dict, line_number: int) -> SelectionEvent:
    try:
        shown = tuple(int(i) for i in obj["shown"])
        selected = tuple(int(i) for i in obj["selected"])
        recorded_at = datetime.fromisoformat(obj["recorded_at"])
        event = SelectionEvent(
            session_id=str(obj["session_id"]),
            iteration_index=int(obj["iteration_index"]),
            shown=shown,
            selected=selected,
            recorded_at=recorded_at,
        )
    except SchemaError:
        raise
    except Exception as exc:
        raise SchemaError(f"bad selection line: {exc}", line_number) from exc
    if event.iteration_index < 1:
        raise SchemaError("iteration_index must be >= 1", line_number)
    if any(i < 0 for i in shown):
        raise SchemaError("shown contains a negative id", line_number)
    return event


def _parse_questionnaire(obj: dict, line_number: int) -> QuestionnaireResponse:
    try:
        return QuestionnaireResponse(
            session_id=str(obj["session_id"]),
            criteria_text=str(obj["criteria_text"]),
            age=None if obj.get("age") is None else int(obj["age"]),
            occupation=None if obj.get("occupation") is None else str(obj["occupation"]),
        )
    except Exception as exc:
        raise SchemaError(f"bad questionnaire line: {exc}", line_number) from exc


def parse_lines(
    lines: Iterable[str],
) -> Iterator[SelectionEvent | QuestionnaireResponse]:
    """Yield parsed records in file order, raising SchemaError with line numbers."""
    for line_number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}", line_number) from exc
        if not isinstance(obj, dict):
            raise SchemaError("line is not a JSON object", line_number)
        keys = set(obj)
        if keys == SELECTION_FIELDS:
            yield _parse_selection(obj, line_number)
        elif keys == QUESTIONNAIRE_FIELDS:
            yield _parse_questionnaire(obj, line_number)
        else:
            raise SchemaError(
                f"unrecognized field set {sorted(keys)}", line_number
            )


def read_log(
    path: str | Path,
) -> tuple[list[SelectionEvent], list[QuestionnaireResponse]]:
    events: list[SelectionEvent] = []
    questionnaires: list[QuestionnaireResponse] = []
    with open(path) as fh:
        for record in parse_lines(fh):
            if isinstance(record, SelectionEvent):
                events.append(record)
            else:
                questionnaires.append(record)
    return events, questionnaires


def selections_by_session(
    events: Iterable[SelectionEvent],
) -> dict[str, list[SelectionEvent]]:
    """Group events by session, ordered by iteration; validates contiguity."""
    grouped: dict[str, list[SelectionEvent]] = {}
    for event in events:
        grouped.setdefault(event.session_id, []).append(event)
    for session_id, session_events in grouped.items():
        session_events.sort(key=lambda e: e.iteration_index)
        indices = [e.iteration_index for e in session_events]
        if indices != list(range(1, len(indices) + 1)):
            raise SchemaError(
                f"session {session_id}: iteration indices {indices} are not the "
                f"contiguous prefix 1..{len(indices)}"
            )
    return grouped
