"""Append-only, timestamped logging of a line-oriented session.

Lines accumulate until they form a syntactically complete expression
(the REPL completeness rule), then one event is appended to the log.
The log is newline-delimited JSON, one event per line, so a crash mid
session leaves every flushed event readable.
"""

from __future__ import annotations

import json
import os
import platform as _platform
import warnings
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable, Optional

from . import __version__
from .deparse import deparse
from .errors import MissingLog, SourceError
from .parser import is_complete, parse_program

ENV_LOG_PATH = "CODEWEFT_LOG_PATH"

KIND_START = "boundary_start"
KIND_STOP = "boundary_stop"
KIND_EXPRESSION = "expression"

# columns an IDE-integrated evaluator would fill; kept empty for schema
# compatibility
EMPTY_COLUMNS = ("value", "path", "contents", "selection")

Clock = Callable[[], datetime]


def _utc_now() -> datetime:
    return datetime.now(timezone.utc)


def default_log_path() -> Path:
    override = os.environ.get(ENV_LOG_PATH)
    if override:
        return Path(override)
    state_home = os.environ.get("XDG_STATE_HOME", os.path.expanduser("~/.local/state"))
    return Path(state_home) / "codeweft" / "session.jsonl"


@dataclass(frozen=True)
class SessionEvent:
    kind: str  # boundary_start | boundary_stop | expression
    dt: datetime  # UTC, millisecond precision
    expr_text: str = ""  # source text; kept raw when unparseable
    meta: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": self.kind,
                "dt": self.dt.isoformat(timespec="milliseconds"),
                "expr_text": self.expr_text,
                "meta": self.meta,
            },
            ensure_ascii=False,
        )

    @staticmethod
    def from_json(line: str) -> "SessionEvent":
        data = json.loads(line)
        return SessionEvent(
            kind=data["kind"],
            dt=datetime.fromisoformat(data["dt"]),
            expr_text=data.get("expr_text", ""),
            meta=data.get("meta", {}),
        )


def _boundary_meta(capture_values: bool) -> dict:
    return {
        "version": __version__,
        "platform": _platform.platform(),
        "value_flag": capture_values,
    }


def record(
    lines: Iterable[str],
    clock: Optional[Clock] = None,
    log_path: Optional[str | Path] = None,
    capture_values: bool = False,
) -> list[SessionEvent]:
    """Log one session from a stream of input lines.

    Events are appended to the log file as they happen and also returned.
    The `capture_values` flag is recorded in the boundary metadata; value
    capture itself needs an evaluator and stays empty.
    """
    clock = clock or _utc_now
    path = Path(log_path) if log_path is not None else default_log_path()
    path.parent.mkdir(parents=True, exist_ok=True)

    events: list[SessionEvent] = []
    with open(path, "a", encoding="utf-8") as fh:

        def emit(event: SessionEvent) -> None:
            fh.write(event.to_json() + "\n")
            fh.flush()
            events.append(event)

        def stamp() -> datetime:
            dt = clock()
            if dt.tzinfo is None:
                dt = dt.replace(tzinfo=timezone.utc)
            micros = dt.microsecond - dt.microsecond % 1000
            return dt.replace(microsecond=micros)

        emit(SessionEvent(KIND_START, stamp(), meta=_boundary_meta(capture_values)))

        pending: list[str] = []
        for line in lines:
            pending.append(line.rstrip("\n"))
            chunk = "\n".join(pending)
            if not chunk.strip():
                pending.clear()
                continue
            try:
                if not is_complete(chunk):
                    continue
            except SourceError:
                # hard syntax error: no further lines can repair it
                emit(SessionEvent(KIND_EXPRESSION, stamp(), chunk, {"parsed": False}))
                pending.clear()
                continue
            program = parse_program(chunk)
            if program.errors:
                emit(SessionEvent(KIND_EXPRESSION, stamp(), chunk, {"parsed": False}))
            else:
                for expr, span in program.exprs:
                    text = _slice_lines(pending, span.start_line, span.end_line)
                    emit(SessionEvent(KIND_EXPRESSION, stamp(), text, {"parsed": True}))
            pending.clear()

        if pending and "\n".join(pending).strip():
            # stream ended mid-expression; keep the raw text, never drop it
            emit(SessionEvent(KIND_EXPRESSION, stamp(), "\n".join(pending), {"parsed": False}))

        emit(SessionEvent(KIND_STOP, stamp(), meta=_boundary_meta(capture_values)))
    return events


def _slice_lines(lines: list[str], start: int, end: int) -> str:
    return "\n".join(lines[start - 1 : end]).strip().strip(";").strip()


def read_log(log_path: Optional[str | Path] = None) -> list[SessionEvent]:
    path = Path(log_path) if log_path is not None else default_log_path()
    if not path.exists():
        raise MissingLog(f"no session log at {path}")
    events = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                events.append(SessionEvent.from_json(line))
    return events


def log_table(log_path: Optional[str | Path] = None) -> list[dict]:
    """Tidy rows for the accumulated sessions in the log.

    Columns: expr (deparsed when parseable), value, path, contents,
    selection (all empty; they need an embedded evaluator/IDE) and dt.
    """
    rows = []
    for event in read_log(log_path):
        if event.kind in (KIND_START, KIND_STOP):
            expr = "<session info>"
        elif event.meta.get("parsed"):
            program = parse_program(event.expr_text)
            expr = "; ".join(deparse(e) for e, _ in program.exprs) or event.expr_text
        else:
            expr = event.expr_text
        row = {"expr": expr}
        row.update({col: "" for col in EMPTY_COLUMNS})
        row["dt"] = event.dt.isoformat(timespec="milliseconds")
        rows.append(row)
    return rows


def remove_log(log_path: Optional[str | Path] = None) -> bool:
    """Delete the persisted log; warns (without failing) when absent."""
    path = Path(log_path) if log_path is not None else default_log_path()
    if not path.exists():
        warnings.warn(f"no session log to remove at {path}")
        return False
    path.unlink()
    return True
